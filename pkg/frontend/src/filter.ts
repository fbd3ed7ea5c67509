import type { Finding } from './model.js';

/**
 * Conjunctive label filtering: a finding stays visible only when it carries
 * every selected label. Matches the scanner CLI's --labels semantics, so a
 * reviewer sees the same set in the browser and in the terminal.
 */
export function applyFilter(findings: Finding[], labels: Iterable<string>): Finding[] {
  const wanted = [...labels];
  if (wanted.length === 0) {
    return findings.slice();
  }
  return findings.filter((f) => wanted.every((l) => f.labels.includes(l)));
}

/** Count of currently visible findings carrying each label, for badges. */
export function labelCounts(findings: Finding[]): Map<string, number> {
  const counts = new Map<string, number>();
  for (const f of findings) {
    for (const label of f.labels) {
      counts.set(label, (counts.get(label) ?? 0) + 1);
    }
  }
  return counts;
}
