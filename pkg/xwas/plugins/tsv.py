"""Delimited text data formats"""

from contextlib import contextmanager
import csv
from dataclasses import dataclass
from typing import ClassVar
from .tabular import TabularFormat

__all__ = [
    'TsvFormat',
    'CsvFormat',
]


@dataclass
class TsvFormat(TabularFormat):
    """Tab-separated text file"""

    name: ClassVar[str] = 'tsv'
    delimiter: ClassVar[str] = '\t'

    @contextmanager
    def data(self, path):
        with open(path, encoding='utf8', newline='') as f:
            yield csv.reader(f, delimiter=self.delimiter)


@dataclass
class CsvFormat(TsvFormat):
    """Comma-separated text file"""

    name: ClassVar[str] = 'csv'
    delimiter: ClassVar[str] = ','
