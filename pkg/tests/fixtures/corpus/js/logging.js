// Request diagnostics.
function onFailure(req, err) {
  const ssn = req.body.ssn;
  console.log(ssn, err.code);
  metrics.trace(err.stack);
}
