"""Flat text records

Configurations and result rows are represented in Python using
`dataclasses`, with the mapping between the Python representation and
the flat text representation (delimited files and ``key=value``
configuration files) handled automatically via introspection of the
Python type annotations.

>>> from enum import Enum
>>> class Strand(Enum):
...     FORWARD = '+'
...     REVERSE = '-'

>>> @xwasrecord
... class Hit(XwasRecord):
...     snp_id: str
...     strand: Strand
...     p_value: float
...     df: int
...     notes: str = None

>>> hit = Hit.from_fields({
...     'snp_id': 'rs6657',
...     'strand': '-',
...     'p_value': '1.5e-08',
...     'df': '3',
... })

>>> hit.strand
<Strand.REVERSE: '-'>

>>> hit.p_value
1.5e-08

>>> hit.to_fields() # doctest: +NORMALIZE_WHITESPACE
{'snp_id': 'rs6657', 'strand': '-', 'p_value': '1.5e-08', 'df': '3',
 'notes': 'NA'}

>>> hit.to_json()
'{"snp_id": "rs6657", "strand": "-", "p_value": 1.5e-08, "df": 3}'

>>> Hit.headings()
['snp_id', 'strand', 'p_value', 'df', 'notes']

>>> Hit.from_fields({'snp_id': 'rs1', 'strand': '+', 'p_value': '1',
...                  'df': '1', 'beta': '0.2'})
Traceback (most recent call last):
    ...
xwas.record.XwasUnknownFieldError: Unknown field "beta" in Hit
"""

import csv
from dataclasses import dataclass, fields
from enum import Enum
import math
from typing import Callable, ClassVar, Iterable, Mapping, Set, Union
import simplejson

__all__ = [
    'MISSING',
    'XwasUnknownFieldError',
    'XwasFieldMap',
    'XwasTypeMap',
    'XwasRecord',
    'xwasrecord',
    'write_records',
]

MISSING = 'NA'
"""Text representation of an absent value"""

TRUE_WORDS = frozenset(('1', 'true', 'yes', 'on'))
FALSE_WORDS = frozenset(('0', 'false', 'no', 'off'))


class XwasUnknownFieldError(KeyError):
    """Unexpected record field"""

    def __str__(self):
        return 'Unknown field "%s" in %s' % self.args


def parse_bool(text):
    """Parse boolean from text"""
    word = text.strip().lower()
    if word in TRUE_WORDS:
        return True
    if word in FALSE_WORDS:
        return False
    raise ValueError("Invalid boolean: '%s'" % text)


def format_float(value):
    """Format floating-point value as text"""
    if math.isnan(value):
        return MISSING
    return '%.10g' % value


def optional(parse):
    """Wrap text parser to map the missing-value marker to ``None``"""
    def parse_optional(text):
        text = text.strip()
        return None if text in ('', MISSING) else parse(text)
    return parse_optional


@dataclass
class XwasFieldMap:
    """A mapping between a Python dataclass field and a text column"""

    name: str
    """Python field name"""

    from_text: Callable
    """Construct Python value from text"""

    to_text: Callable
    """Convert Python value to text"""

    to_json: Callable
    """Convert Python value to JSON-compatible value"""

    heading: str = None
    """Column heading (or configuration key)"""

    def __post_init__(self):
        if self.heading is None:
            self.heading = self.name


class XwasTypeMap:
    """Mapper between Python field values and text values"""

    @staticmethod
    def unwrap(pytype):
        """Strip ``Optional[...]`` from a type annotation"""
        if getattr(pytype, '__origin__', None) is Union:
            args = [x for x in pytype.__args__ if x is not type(None)]
            return args[0]
        return pytype

    @classmethod
    def from_text(cls, pytype):
        """Construct Python value from text"""
        pytype = cls.unwrap(pytype)

        # Recurse into tuple types as comma-separated lists
        if getattr(pytype, '__origin__', None) is tuple:
            subtype = cls.from_text(pytype.__args__[0])
            return optional(lambda x: tuple(
                subtype(y) for y in x.split(',')
            ))

        # Parse enumerations using the enum value
        if issubclass(pytype, Enum):
            return optional(lambda x: pytype(
                type(next(iter(pytype)).value)(x)
            ))

        # Parse booleans from common spellings
        if issubclass(pytype, bool):
            return optional(parse_bool)

        # Otherwise, assume constructor can handle the text
        return optional(pytype)

    @classmethod
    def to_text(cls, pytype):
        """Convert Python value to text"""
        pytype = cls.unwrap(pytype)
        convert = cls.to_json(pytype)

        # Format tuples as comma-separated lists
        if getattr(pytype, '__origin__', None) is tuple:
            subtype = cls.to_text(pytype.__args__[0])
            text = lambda x: ','.join(subtype(y) for y in x)
        elif issubclass(pytype, bool):
            text = lambda x: 'true' if x else 'false'
        elif issubclass(pytype, float):
            text = format_float
        else:
            text = lambda x: str(convert(x))

        return lambda x: MISSING if x is None else text(x)

    @classmethod
    def to_json(cls, pytype):
        """Convert Python value to JSON-compatible value"""
        pytype = cls.unwrap(pytype)

        # Format tuples as lists
        if getattr(pytype, '__origin__', None) is tuple:
            subtype = cls.to_json(pytype.__args__[0])
            return lambda x: [subtype(y) for y in x]

        # Format enumerations using the enum value
        if issubclass(pytype, Enum):
            return lambda x: x.value

        # Otherwise, assume constructor produces a valid JSON value
        return pytype


class XwasRecord:
    """Flat text record"""

    FieldMap: ClassVar[type] = XwasFieldMap
    """Field mapping class"""

    TypeMap: ClassVar[type] = XwasTypeMap
    """Type mapping class"""

    __mapping_by_name: ClassVar[Mapping] = {}
    __mapping_by_heading: ClassVar[Mapping] = {}
    __known_headings: ClassVar[Set] = set()

    @classmethod
    def build_mappings(cls):
        """Construct mappings between Python fields and text columns"""
        mappings = [cls.FieldMap(
            name=f.name,
            heading=f.metadata.get('name'),
            from_text=cls.TypeMap.from_text(f.type),
            to_text=cls.TypeMap.to_text(f.type),
            to_json=cls.TypeMap.to_json(f.type),
        ) for f in fields(cls)]
        cls.__mapping_by_name = {m.name: m for m in mappings}
        cls.__mapping_by_heading = {m.heading: m for m in mappings}
        cls.__known_headings = set(cls.__mapping_by_heading)

    @classmethod
    def headings(cls):
        """Column headings, in field order"""
        return [m.heading for m in cls.__mapping_by_name.values()]

    @classmethod
    def from_fields(cls, values):
        """Construct Python object from text values keyed by heading"""
        mapping = cls.__mapping_by_heading
        unknown = set(values) - cls.__known_headings
        if unknown:
            raise XwasUnknownFieldError(sorted(unknown)[0], cls.__name__)
        vals = {
            mapping[k].name: mapping[k].from_text(v)
            for k, v in values.items()
        }
        return cls(**{k: v for k, v in vals.items() if v is not None})

    def to_fields(self):
        """Convert Python object to text values keyed by heading"""
        return {
            v.heading: v.to_text(getattr(self, k))
            for k, v in self.__mapping_by_name.items()
        }

    def to_row(self):
        """Convert Python object to a list of text values"""
        return list(self.to_fields().values())

    def to_dict(self):
        """Convert Python object to JSON-compatible values"""
        return {
            v.heading: v.to_json(getattr(self, k))
            for k, v in self.__mapping_by_name.items()
            if getattr(self, k) is not None
        }

    @classmethod
    def from_json(cls, json, *, loads=simplejson.loads):
        """Construct Python object from JSON representation"""
        values = loads(json)
        return cls.from_fields({
            k: ','.join(str(x) for x in v) if isinstance(v, list) else
            ('true' if v else 'false') if isinstance(v, bool) else str(v)
            for k, v in values.items()
        })

    def to_json(self, *, dumps=simplejson.dumps, **kwargs):
        """Convert Python object to JSON representation"""
        return dumps(self.to_dict(), **kwargs)


def xwasrecord(cls):
    """Flat text record decorator"""
    cls = dataclass(cls)
    cls.build_mappings()
    return cls


def write_records(records: Iterable[XwasRecord], file, Record=None,
                  delimiter='\t'):
    """Write records as delimited text with a heading row"""
    records = list(records)
    if Record is None:
        if not records:
            return
        Record = type(records[0])
    writer = csv.writer(file, delimiter=delimiter, lineterminator='\n')
    writer.writerow(Record.headings())
    writer.writerows(x.to_row() for x in records)
