from qlambert.formats.base import Document, ReportFormat, Target, render
from qlambert.formats.csv import CsvFormat
from qlambert.formats.json import JsonFormat
from qlambert.formats.text import TextFormat
from qlambert.formats.yaml import YamlFormat
