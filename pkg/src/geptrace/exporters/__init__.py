"""
geptrace Exporters Module

Exports check reports to spreadsheet formats.
"""

from .csv_exporter import export_reports_csv, export_reports_tsv, export_with_format

__all__ = ['export_reports_csv', 'export_reports_tsv', 'export_with_format']
