"""
CSV/TSV Export Module

Exports check reports to CSV or TSV format for spreadsheet analysis.
"""

import csv
from pathlib import Path
from typing import Any, Dict, List


def get_csv_columns() -> List[str]:
    """Define standard CSV column order."""
    return [
        'suite',
        'trial',
        'name',
        'holds',
        'passed',
        'lhs',
        'rhs',
        'residual',
        'equality_case',
        'equality_verified',
        'detail',
    ]


def normalize_record_for_csv(record: Dict[str, Any]) -> Dict[str, str]:
    """
    Normalize an aggregated check record for CSV export.

    Floats keep their shortest round-trip repr; booleans become Yes/No and
    missing values become empty strings.
    """
    normalized = {}
    for col in get_csv_columns():
        value = record.get(col, '')

        if isinstance(value, bool):
            value = 'Yes' if value else 'No'
        elif value is None:
            value = ''
        elif isinstance(value, float):
            value = repr(value)
        else:
            value = str(value)

        # Single-line cells
        normalized[col] = ' '.join(value.split())

    return normalized


def _export(records: List[Dict[str, Any]], output_path: Path, delimiter: str, include_bom: bool) -> None:
    encoding = 'utf-8-sig' if include_bom else 'utf-8'
    output_path = Path(output_path)
    output_path.parent.mkdir(parents=True, exist_ok=True)

    with open(output_path, 'w', newline='', encoding=encoding) as f:
        writer = csv.DictWriter(
            f,
            fieldnames=get_csv_columns(),
            delimiter=delimiter,
            quoting=csv.QUOTE_MINIMAL
        )
        writer.writeheader()
        for record in records:
            writer.writerow(normalize_record_for_csv(record))


def export_reports_csv(
    records: List[Dict[str, Any]],
    output_path: Path,
    include_bom: bool = False
) -> None:
    """
    Export check records to CSV format.

    Args:
        records: Aggregated records (CheckAggregator.get_records())
        output_path: Path where CSV file will be written
        include_bom: Include UTF-8 BOM for Excel compatibility

    Raises:
        IOError: If file cannot be written
    """
    _export(records, output_path, ',', include_bom)


def export_reports_tsv(
    records: List[Dict[str, Any]],
    output_path: Path,
    include_bom: bool = False
) -> None:
    """
    Export check records to TSV (Tab-Separated Values) format.

    Raises:
        IOError: If file cannot be written
    """
    _export(records, output_path, '\t', include_bom)


def export_with_format(
    records: List[Dict[str, Any]],
    output_path: Path,
    format: str = 'csv',
    include_bom: bool = False
) -> None:
    """
    Export check records in the specified format.

    Raises:
        ValueError: If format is not supported
    """
    if format.lower() == 'csv':
        export_reports_csv(records, output_path, include_bom)
    elif format.lower() == 'tsv':
        export_reports_tsv(records, output_path, include_bom)
    else:
        raise ValueError(f"Unsupported format: {format}. Use 'csv' or 'tsv'.")
