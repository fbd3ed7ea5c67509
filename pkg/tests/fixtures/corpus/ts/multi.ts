// Support bundle: one statement, two data categories.
export function bundle(user: User): void {
  helpdesk.send(user.email, user.ssn);
}
