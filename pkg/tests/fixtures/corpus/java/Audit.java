package app.audit;

// Fraud desk escalation line: +47 22 33 44 55 (see runbook).
class Audit {
    void record(Case c) {
        String username = c.actor();
        journal.audit(username);
        String invoice = c.invoiceRef();
        logger.warn(invoice);
    }
}
