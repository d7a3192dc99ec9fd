"""Tabular data formats"""

from contextlib import contextmanager
from dataclasses import dataclass, field, fields, MISSING as NO_DEFAULT
from enum import Enum
from operator import itemgetter
from typing import Callable, ClassVar, Iterable, List, Mapping, Tuple
from ..genetics.genotype import Sex
from ..record import MISSING

__all__ = [
    'TabularTypeParser',
    'TabularDataClass',
    'tabulardataclass',
    'TabularRowReader',
    'TabularReader',
    'TabularColumn',
    'TabularFormat',
    'PhenotypeRow',
    'PHENOTYPE_COLUMNS',
    'parse_text',
    'parse_float',
]


def parse_text(value):
    """Parse text value"""
    return str(value).strip()


def parse_float(value):
    """Parse floating-point value, with missing values as NaN"""
    if isinstance(value, str):
        value = value.strip()
        if value in ('', MISSING):
            return float('nan')
    return float(value)


@dataclass
class TabularTypeParser:
    """Tabular data type parser"""

    pytype: type
    """Target Python type"""

    parse: Callable = None
    """Value parser for this target Python type"""

    def __post_init__(self):
        if self.parse is None:
            if getattr(self.pytype, '__origin__', None) is tuple:
                item = type(self)(self.pytype.__args__[0]).parse
                self.parse = lambda x: tuple(item(y) for y in x)
            elif issubclass(self.pytype, Enum):
                self.parse = lambda x: self.pytype(parse_text(x))
            elif issubclass(self.pytype, float):
                self.parse = parse_float
            elif issubclass(self.pytype, str):
                self.parse = parse_text
            else:
                self.parse = self.pytype


class TabularDataClass:
    """Tabular data class"""

    TypeParser = TabularTypeParser
    """Type parser class"""

    extras: ClassVar[str] = None
    """Field collecting the values of all unmapped columns"""

    __parsers: ClassVar[Mapping[str, Callable]]
    """Type parsers for each dataclass field"""

    @classmethod
    def build_parsers(cls):
        """Construct type parsers for each dataclass field"""
        cls.__parsers = {
            f.name: cls.TypeParser(f.type).parse
            for f in fields(cls)
        }

    @classmethod
    def from_tabular(cls, **kwargs):
        """Construct Python object from tabular data"""
        parse = cls.__parsers
        return cls(**{k: parse[k](v) for k, v in kwargs.items()})


def tabulardataclass(cls):
    """Tabular data class decorator"""
    cls = dataclass(cls)
    cls.build_parsers()
    return cls


@dataclass
class TabularRowReader:
    """Tabular data row reader"""

    Row: type
    """Row data class"""

    headings: List[str]
    """Input column headings"""

    mapping: Mapping[str, str] = field(default_factory=dict)
    """Mapping from row data class field names to input column headings"""

    getters: Mapping[str, Callable] = field(default_factory=dict)
    """Item getters for each row data class field present in input columns"""

    extra_headings: List[str] = field(default_factory=list)
    """Headings of unmapped columns"""

    def __post_init__(self):
        used = set()
        for f in fields(self.Row):
            if f.name == self.Row.extras:
                continue
            heading = self.mapping.get(f.name, f.name)
            if heading in self.headings:
                index = self.headings.index(heading)
                used.add(index)
                # pylint: disable=unsupported-assignment-operation
                self.getters[f.name] = itemgetter(index)
            elif f.default is NO_DEFAULT:
                raise ValueError("Missing column '%s'" % heading)
        if self.Row.extras is not None:
            unused = [i for i in range(len(self.headings)) if i not in used]
            self.extra_headings = [self.headings[i] for i in unused]
            # pylint: disable=unsupported-assignment-operation
            self.getters[self.Row.extras] = lambda row: [
                row[i] for i in unused
            ]

    def __call__(self, row):
        """Construct row data class instance from input row data"""
        # pylint: disable=no-member
        return self.Row.from_tabular(**{
            k: v(row) for k, v in self.getters.items()
        })


@dataclass
class TabularReader:
    """Tabular data reader"""

    data: Iterable
    """Input data"""

    Row: type
    """Row class"""

    headings: List[str] = None
    """Input column headings"""

    mapping: Mapping[str, str] = field(default_factory=dict)
    """Mapping from output row field names to input column headings"""

    RowReader: ClassVar[type] = TabularRowReader
    """Data row reader class"""

    row_reader: TabularRowReader = field(default=None, init=False)
    """Row reader (once headings are known)"""

    def __iter__(self):
        it = iter(self.data)
        if self.headings is None:
            try:
                self.headings = [str(x).strip() for x in next(it)]
            except StopIteration:
                return iter(())
        self.row_reader = self.RowReader(self.Row, self.headings,
                                         mapping=self.mapping)
        return (self.row_reader(row) for row in it if any(
            str(x).strip() for x in row
        ))


@dataclass
class TabularColumn:
    """Tabular data column"""

    name: str
    """Column name"""

    description: str = None
    """Column description"""

    dest: str = None
    """Argument parser destination"""

    def __post_init__(self):
        if self.dest is None:
            self.dest = '%s_column' % self.name


@tabulardataclass
class PhenotypeRow(TabularDataClass):
    """Phenotype file row"""

    extras = 'covariates'

    sample_id: str
    sex: Sex
    phenotype: float
    covariates: Tuple[float, ...] = ()


PHENOTYPE_COLUMNS = [
    TabularColumn('sample_id', "sample identifier"),
    TabularColumn('sex', "sex (F or M)"),
    TabularColumn('phenotype', "phenotype"),
]
"""Phenotype file column definitions"""


@dataclass
class TabularFormat:
    """Tabular file format"""

    name: ClassVar[str] = None
    """Format name"""

    Row: ClassVar[type] = PhenotypeRow
    """Phenotype row data class"""

    @contextmanager
    def data(self, path):
        """Read rows of raw values from a file"""
        yield [()]

    @contextmanager
    def reader(self, path, mapping=None):
        """Construct phenotype data reader"""
        with self.data(path) as data:
            yield TabularReader(data, self.Row, mapping=mapping or {})
