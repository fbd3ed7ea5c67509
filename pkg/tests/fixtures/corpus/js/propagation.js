// Alias shuffle before the upload.
function relay(user) {
  let a = user.userEmail;
  let b = a;
  uploader.upload(b);
  a = 0;
  sink.compute(a);
}
