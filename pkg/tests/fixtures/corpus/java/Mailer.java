package app.mail;

class Mailer {
    void blast(Roster roster) {
        String email = roster.primaryAddress();
        relay.send(email);
        String firstName = roster.ownerGivenName();
        merge.transmit(firstName);
    }
}
