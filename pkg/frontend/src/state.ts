import { allFindings, type Finding, type Group, type Report } from './model.js';
import { applyFilter } from './filter.js';
import type { Mark, Marks } from './marks.js';
import { setMark } from './marks.js';

export interface ViewState {
  report: Report;
  filter: Set<string>;
  criterion: string; // active grouping view
  marks: Marks;
}

export function createState(report: Report): ViewState {
  return { report, filter: new Set(), criterion: 'neighboring', marks: new Map() };
}

export function toggleLabel(state: ViewState, label: string): ViewState {
  const filter = new Set(state.filter);
  if (filter.has(label)) {
    filter.delete(label);
  } else {
    filter.add(label);
  }
  return { ...state, filter };
}

export function clearFilter(state: ViewState): ViewState {
  return { ...state, filter: new Set() };
}

export function setCriterion(state: ViewState, criterion: string): ViewState {
  return { ...state, criterion };
}

/** Marks survive filter and criterion changes untouched; only this updates them. */
export function markFinding(state: ViewState, id: string, mark: Mark | 'unmarked'): ViewState {
  return { ...state, marks: setMark(state.marks, id, mark) };
}

export function visibleFindings(state: ViewState): Finding[] {
  return applyFilter(allFindings(state.report), state.filter);
}

export function visibleGroups(state: ViewState): Group[] {
  const groups = state.report.groups[state.criterion] ?? [];
  const visible = new Set(visibleFindings(state).map((f) => f.id));
  return groups
    .map((g) => ({ ...g, members: g.members.filter((m) => visible.has(m)) }))
    .filter((g) => g.members.length > 0);
}
