// Templated notifications.
function page(onCall) {
  const userEmail = onCall.email;
  pager.send(`wake up ${userEmail} now`);
}
