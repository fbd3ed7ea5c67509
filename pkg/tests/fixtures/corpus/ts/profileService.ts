// Profile denormalization.
export function flatten(profile: Profile): string {
  const phoneNumber = profile.contact.phone;
  const pretty = layout.format(phoneNumber);
  feed.push(pretty);
  return pretty;
}

export function rename(profile: Profile, next: string): void {
  const fullName = next;
  nameIndex.update(fullName);
}
