// Mongo persistence.
async function persistUsers(db, batch) {
  const userId = batch.ownerId;
  await db.insertOne(userId);
  const dob = batch.birthRecord;
  await db.insertOne(dob);
  const rows = await db.findOne(userId);
  return rows;
}
