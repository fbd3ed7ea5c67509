// Token custody.
export function rotate(grant: Grant): void {
  const authToken = grant.bearer;
  custodian.upload(authToken);
  auditTrail.audit(authToken);
}
