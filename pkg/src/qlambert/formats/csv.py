import csv

from qlambert.formats.base import Document, ReportFormat


class CsvFormat(ReportFormat, exts=['.csv']):
    def write(self, doc: Document, f):
        if not doc.rows:
            return
        writer = csv.DictWriter(f, fieldnames=list(doc.rows[0]),
                                lineterminator='\n')
        writer.writeheader()
        writer.writerows(doc.rows)
