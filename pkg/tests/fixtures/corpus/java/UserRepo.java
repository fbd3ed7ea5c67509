package app.store;

class UserRepo {
    void loadAccount(Connection conn, String userId) {
        stmt.executeQuery(userId);
    }

    void saveContact(String email) {
        contactTable.persist(email);
    }
}
