/**
 * CSV parsing and schema validation for willsim harness outputs.
 *
 * The harness writes plain comma-separated UTF-8 with a header row and no
 * quoting, so parsing is a straight split; all validation effort goes into
 * schema checks, which are hard errors by contract.
 */

export class SchemaMismatch extends Error {}
export class MissingColumn extends SchemaMismatch {}

export interface Table {
  header: string[];
  rows: string[][];
}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaMismatch("empty CSV");
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line) => line.split(","));
  for (const row of rows) {
    if (row.length !== header.length) {
      throw new SchemaMismatch(
        `row has ${row.length} cells, header has ${header.length}`,
      );
    }
  }
  return { header, rows };
}

export function requireColumns(table: Table, expected: string[]): void {
  for (const name of expected) {
    if (!table.header.includes(name)) {
      throw new MissingColumn(
        `missing column "${name}" (header: ${table.header.join(",")})`,
      );
    }
  }
}

/** Column accessor; values parse as numbers unless asString is set. */
export function column(table: Table, name: string): number[] {
  const index = table.header.indexOf(name);
  if (index < 0) throw new MissingColumn(`missing column "${name}"`);
  return table.rows.map((row, i) => {
    const value = Number(row[index]);
    if (!Number.isFinite(value)) {
      throw new SchemaMismatch(`non-numeric "${row[index]}" in ${name} row ${i}`);
    }
    return value;
  });
}

export function columnText(table: Table, name: string): string[] {
  const index = table.header.indexOf(name);
  if (index < 0) throw new MissingColumn(`missing column "${name}"`);
  return table.rows.map((row) => row[index]);
}

export function distinct<T>(values: T[]): T[] {
  return [...new Set(values)];
}
