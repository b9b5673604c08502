/** Parsing and validation of adiasearch sweep CSV files. */

export const SWEEP_COLUMNS = [
  "log2N",
  "log2T",
  "N",
  "T",
  "p",
  "omega",
  "sigma",
  "schedule",
] as const;

export interface SweepPoint {
  log2N: number;
  log2T: number;
}

export class SchemaError extends Error {
  constructor(message: string, readonly column?: string) {
    super(message);
    this.name = "SchemaError";
  }
}

/**
 * Parse one sweep CSV. Rows whose T field is empty (failed sweep rows) are
 * dropped; everything else must be numeric. Throws SchemaError naming the
 * offending column on any mismatch, and on empty input.
 */
export function parseSweepCsv(text: string, source: string): SweepPoint[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError(`${source}: empty CSV (no header)`);
  }
  const header = lines[0].split(",");
  for (let i = 0; i < SWEEP_COLUMNS.length; i++) {
    if (header[i] !== SWEEP_COLUMNS[i]) {
      throw new SchemaError(
        `${source}: expected column ${i + 1} to be "${SWEEP_COLUMNS[i]}", ` +
          `got "${header[i] ?? ""}"`,
        SWEEP_COLUMNS[i],
      );
    }
  }
  if (header.length !== SWEEP_COLUMNS.length) {
    throw new SchemaError(
      `${source}: unexpected extra column "${header[SWEEP_COLUMNS.length]}"`,
      header[SWEEP_COLUMNS.length],
    );
  }
  if (lines.length === 1) {
    throw new SchemaError(`${source}: empty CSV (header but no rows)`);
  }

  const points: SweepPoint[] = [];
  for (let row = 1; row < lines.length; row++) {
    const fields = lines[row].split(",");
    if (fields.length !== SWEEP_COLUMNS.length) {
      throw new SchemaError(
        `${source}: row ${row + 1} has ${fields.length} fields, ` +
          `expected ${SWEEP_COLUMNS.length}`,
      );
    }
    if (fields[3] === "") {
      continue; // failed sweep row: no run time found
    }
    const log2N = Number(fields[0]);
    const log2T = Number(fields[1]);
    if (!Number.isFinite(log2N)) {
      throw new SchemaError(
        `${source}: row ${row + 1}: non-numeric value in column "log2N"`,
        "log2N",
      );
    }
    if (!Number.isFinite(log2T)) {
      throw new SchemaError(
        `${source}: row ${row + 1}: non-numeric value in column "log2T"`,
        "log2T",
      );
    }
    points.push({ log2N, log2T });
  }
  points.sort((a, b) => a.log2N - b.log2N);
  return points;
}
