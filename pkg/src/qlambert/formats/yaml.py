from qlambert.formats.base import Document, ReportFormat


class YamlFormat(ReportFormat, exts=['.yaml', '.yml']):
    def write(self, doc: Document, f):
        yaml = __import__('yaml')
        yaml.safe_dump(doc.data, f, sort_keys=False)
