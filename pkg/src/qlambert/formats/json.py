import json

from qlambert.formats.base import Document, ReportFormat


class JsonFormat(ReportFormat, exts=['.json']):
    def write(self, doc: Document, f):
        json.dump(doc.data, f, indent=2)
        f.write('\n')
