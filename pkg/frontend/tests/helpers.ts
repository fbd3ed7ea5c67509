import { readFileSync } from 'node:fs';
import { fileURLToPath } from 'node:url';
import { validateReport, type Report } from '../src/model.js';

export function fixture(name: string): unknown {
  const path = fileURLToPath(new URL(`./fixtures/${name}`, import.meta.url));
  return JSON.parse(readFileSync(path, 'utf-8'));
}

export function fixtureReport(): Report {
  return validateReport(fixture('report.json'));
}
