from qlambert.formats.base import Document, ReportFormat


class TextFormat(ReportFormat, exts=['.txt', '.text']):
    def write(self, doc: Document, f):
        f.write(doc.text)
        if doc.text and not doc.text.endswith('\n'):
            f.write('\n')
