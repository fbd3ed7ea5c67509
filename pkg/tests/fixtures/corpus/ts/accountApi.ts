// REST surface for account administration.
export async function broadcastAccounts(api: Api): Promise<void> {
  const userId = api.viewer.id;
  await gateway.post(userId);
  await mirror.upload(userId);
}

export function retire(api: Api, login: string): void {
  bus.emit(login);
  archiveFeed.transmit(login);
  const accountId = api.target;
  peers.sync(accountId);
  graveyard.purge(accountId);
}

export function refreshUi(theme: Theme): void {
  const loginBanner = theme.banner;
  kiosk.push(loginBanner);
}
