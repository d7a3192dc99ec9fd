"""Excel data formats"""

from contextlib import contextmanager
from dataclasses import dataclass
from typing import ClassVar
from xlrd import open_workbook, XL_CELL_EMPTY, XL_CELL_ERROR
from .tabular import (TabularTypeParser, TabularDataClass, TabularFormat,
                      PhenotypeRow, parse_text, tabulardataclass)

__all__ = [
    'ExcelTypeParser',
    'ExcelDataClass',
    'ExcelPhenotypeRow',
    'ExcelFormat',
]


def parse_cell_text(value):
    """Parse text from a cell value

    Numeric cells holding whole numbers (such as numeric sample
    identifiers) are read back without a fractional part.
    """
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return parse_text(value)


@dataclass
class ExcelTypeParser(TabularTypeParser):
    """Excel type parser"""

    def __post_init__(self):
        if self.parse is None:
            if self.pytype is str:
                self.parse = parse_cell_text
        super().__post_init__()


class ExcelDataClass(TabularDataClass):
    """Excel data class"""

    TypeParser = ExcelTypeParser


@tabulardataclass
class ExcelPhenotypeRow(ExcelDataClass, PhenotypeRow):
    """Phenotype row from Excel data"""


@dataclass
class ExcelFormat(TabularFormat):
    """Excel workbook"""

    name: ClassVar[str] = 'excel'

    Row: ClassVar[type] = ExcelPhenotypeRow

    sheet: str = None
    """Worksheet name (default: first worksheet)"""

    @contextmanager
    def data(self, path):
        with open_workbook(path) as workbook:

            # Get selected worksheet
            if self.sheet is None:
                sheet = workbook.sheet_by_index(0)
            else:
                sheet = workbook.sheet_by_name(self.sheet)

            def excel_value(cell):
                """Parse raw cell value"""
                if cell.ctype in (XL_CELL_EMPTY, XL_CELL_ERROR):
                    return ''
                return cell.value

            yield ([excel_value(x) for x in row] for row in sheet.get_rows())
