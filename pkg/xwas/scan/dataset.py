"""Genotype and phenotype datasets

A dataset is read from a genotype file and a phenotype file.  The
genotype file is tab-separated, with a heading row ``snp_id chrom
sample1 ... sampleN`` and one row per SNP.  Genotype symbols are:

============ ===================== ==========================
Samples      Symbols               Meaning
============ ===================== ==========================
diploid      ``0`` ``1`` ``2``     copies of the ``R`` allele
diploid      ``rr`` ``rR`` ``RR``  genotype (``Rr`` = ``rR``)
X males      ``0`` ``1``           copies of the ``R`` allele
X males      ``r`` ``R``           hemizygous genotype
any          ``NA`` or empty       missing
============ ===================== ==========================

Any other symbol is treated as missing, with a warning giving the
number of unknown symbols encountered.

The phenotype file has columns ``sample_id``, ``sex`` (``F`` or
``M``) and ``phenotype``; every other column is read as a numeric
covariate.

>>> symbols = [parse_symbol(x, True, Chromosome.X) for x in ('0', 'R', 'NA')]
>>> [GenotypeState(x).symbol for x in symbols]
['r', 'R', 'NA']
>>> parse_symbol('rR', True, Chromosome.X)
Traceback (most recent call last):
    ...
xwas.scan.dataset.DatasetError: sex/genotype conflict
"""

from dataclasses import dataclass, field
from enum import Enum
import logging
from typing import Dict, List, Mapping
import numpy as np
from ..family import Family
from ..genetics.genotype import Chromosome, Genotype, GenotypeState
from ..plugins.excel import ExcelFormat
from ..plugins.tsv import CsvFormat, TsvFormat
from ..record import MISSING

__all__ = [
    'DatasetError',
    'PhenotypeKind',
    'Snp',
    'Dataset',
    'FormatSpec',
    'PHENOTYPE_FORMATS',
    'parse_symbol',
    'read_genotypes',
    'read_phenotypes',
    'load_dataset',
]

logger = logging.getLogger(__name__)

DIPLOID_SYMBOLS = {
    '0': GenotypeState.FEMALE_LOW,
    '1': GenotypeState.FEMALE_HET,
    '2': GenotypeState.FEMALE_HIGH,
    'rr': GenotypeState.FEMALE_LOW,
    'rR': GenotypeState.FEMALE_HET,
    'Rr': GenotypeState.FEMALE_HET,
    'RR': GenotypeState.FEMALE_HIGH,
}

HEMIZYGOUS_SYMBOLS = {
    '0': GenotypeState.MALE_LOW,
    '1': GenotypeState.MALE_HIGH,
    'r': GenotypeState.MALE_LOW,
    'R': GenotypeState.MALE_HIGH,
}

MISSING_SYMBOLS = frozenset((MISSING, ''))

GENOTYPE_HEADINGS = ['snp_id', 'chrom']
"""Leading genotype file column headings"""

PHENOTYPE_FORMATS = {x.name: x for x in (TsvFormat, CsvFormat, ExcelFormat)}
"""Phenotype file formats"""


class DatasetError(ValueError):
    """Invalid dataset"""

    def __str__(self):
        return self.args[0]


class UnknownSymbol(Exception):
    """Genotype symbol outside the genotype alphabet"""


class PhenotypeKind(Enum):
    """Phenotype kind"""

    CONTINUOUS = 'continuous'
    BINARY = 'binary'

    @property
    def family(self):
        """Regression family used for this phenotype kind"""
        if self is PhenotypeKind.BINARY:
            return Family.LOGISTIC
        return Family.LINEAR

    @classmethod
    def detect(cls, phenotype):
        """Infer phenotype kind from phenotype values"""
        if np.all(np.isin(phenotype, (0, 1))):
            return cls.BINARY
        return cls.CONTINUOUS


def parse_symbol(symbol, male, chromosome):
    """Parse a genotype symbol into a genotype state"""
    symbol = symbol.strip()
    if symbol in MISSING_SYMBOLS:
        return GenotypeState.MISSING
    hemizygous = male and chromosome is Chromosome.X
    table = HEMIZYGOUS_SYMBOLS if hemizygous else DIPLOID_SYMBOLS
    if symbol in table:
        return table[symbol]
    other = DIPLOID_SYMBOLS if hemizygous else HEMIZYGOUS_SYMBOLS
    if symbol in other:
        if chromosome is Chromosome.AUTOSOME:
            raise DatasetError("hemizygous genotype on autosome")
        raise DatasetError("sex/genotype conflict")
    raise UnknownSymbol(symbol)


@dataclass
class Snp:
    """A single SNP"""

    snp_id: str
    """SNP identifier"""

    chromosome: Chromosome
    """Chromosome kind"""

    states: np.ndarray
    """Genotype state of each sample"""

    @property
    def missing_count(self):
        """Number of samples with a missing genotype"""
        return int(np.sum(self.states == GenotypeState.MISSING))

    @property
    def genotypes(self):
        """Genotype of each sample"""
        return [Genotype(GenotypeState(x), self.chromosome)
                for x in self.states]


@dataclass
class Dataset:
    """Genotypes, sexes, phenotypes and covariates of a set of samples"""

    sample_ids: List[str]
    """Sample identifiers"""

    sexes: np.ndarray
    """Sex indicator of each sample (0 for females, 1 for males)"""

    phenotype: np.ndarray
    """Phenotype of each sample"""

    snps: List[Snp] = field(default_factory=list)
    """SNPs"""

    covariates: np.ndarray = None
    """Environmental covariates (one row per sample)"""

    covariate_names: List[str] = field(default_factory=list)
    """Environmental covariate names"""

    phenotype_kind: PhenotypeKind = None
    """Phenotype kind (default: inferred from phenotype values)"""

    def __post_init__(self):
        self.sexes = np.asarray(self.sexes, dtype=int)
        self.phenotype = np.asarray(self.phenotype, dtype=float)
        n = len(self.sample_ids)
        if len(self.sexes) != n or len(self.phenotype) != n:
            raise DatasetError("sample length mismatch")
        if self.covariates is not None:
            self.covariates = np.asarray(self.covariates,
                                         dtype=float).reshape(n, -1)
            if not self.covariates.shape[1]:
                self.covariates = None
        if self.phenotype_kind is None:
            self.phenotype_kind = PhenotypeKind.detect(self.phenotype)
        if (self.phenotype_kind is PhenotypeKind.BINARY and
                not np.all(np.isin(self.phenotype, (0, 1)))):
            raise DatasetError("binary phenotype outside {0, 1}")
        for snp in self.snps:
            if len(snp.states) != n:
                raise DatasetError("sample length mismatch for SNP %s" %
                                   snp.snp_id)

    @property
    def n(self):
        """Number of samples"""
        return len(self.sample_ids)

    @property
    def covariate_count(self):
        """Number of environmental covariates"""
        return 0 if self.covariates is None else self.covariates.shape[1]

    def snp(self, snp_id):
        """Look up SNP by identifier"""
        for snp in self.snps:
            if snp.snp_id == snp_id:
                return snp
        raise KeyError(snp_id)


@dataclass
class FormatSpec:
    """Phenotype file format specification"""

    phenotype_format: str = 'tsv'
    """Phenotype file format name"""

    sheet: str = None
    """Worksheet name (Excel phenotype files)"""

    columns: Mapping[str, str] = field(default_factory=dict)
    """Mapping from phenotype fields to phenotype file column headings"""

    phenotype_kind: PhenotypeKind = None
    """Phenotype kind (default: inferred from phenotype values)"""

    @property
    def reader_format(self):
        """Phenotype file format"""
        try:
            Format = PHENOTYPE_FORMATS[self.phenotype_format]
        except KeyError as exc:
            raise DatasetError("Unknown phenotype format '%s'" %
                               self.phenotype_format) from exc
        if Format is ExcelFormat:
            return Format(sheet=self.sheet)
        return Format()


def read_genotypes(path, sexes: Mapping[str, int] = None):
    """Read genotype file

    Returns the sample identifiers (in file order), the SNPs, and the
    number of unknown genotype symbols.  Without a ``sexes`` mapping
    all samples are treated as females.
    """
    snps: Dict[str, Snp] = {}
    unknown = 0
    with TsvFormat().data(path) as data:
        rows = iter(data)
        try:
            headings = [x.strip() for x in next(rows)]
        except StopIteration:
            raise DatasetError("empty genotype file %s" % path) from None
        if headings[:2] != GENOTYPE_HEADINGS:
            raise DatasetError("genotype file %s must start with columns %s" %
                               (path, ' '.join(GENOTYPE_HEADINGS)))
        sample_ids = headings[2:]
        if len(set(sample_ids)) != len(sample_ids):
            raise DatasetError("duplicated sample ID in %s" % path)
        if sexes is not None:
            absent = [x for x in sample_ids if x not in sexes]
            if absent:
                raise DatasetError("sample ID mismatch: %s has no phenotype" %
                                   absent[0])
        male = [(sexes or {}).get(x, 0) == 1 for x in sample_ids]
        for lineno, row in enumerate(rows, start=2):
            if not any(x.strip() for x in row):
                continue
            if len(row) != len(headings):
                raise DatasetError("malformed row %d in %s" % (lineno, path))
            snp_id = row[0].strip()
            if snp_id in snps:
                raise DatasetError("duplicated SNP ID %s" % snp_id)
            try:
                chromosome = Chromosome(row[1].strip())
            except ValueError as exc:
                raise DatasetError("unknown chromosome kind '%s' for SNP %s" %
                                   (row[1], snp_id)) from exc
            states = np.full(len(sample_ids), GenotypeState.MISSING, int)
            for i, symbol in enumerate(row[2:]):
                try:
                    states[i] = parse_symbol(symbol, male[i], chromosome)
                except UnknownSymbol:
                    unknown += 1
                except DatasetError as exc:
                    raise DatasetError("%s: SNP %s sample %s" % (
                        exc, snp_id, sample_ids[i]
                    )) from exc
            snps[snp_id] = Snp(snp_id, chromosome, states)
    if not snps:
        raise DatasetError("no SNPs in genotype file %s" % path)
    if unknown:
        logger.warning("%d unknown genotype symbols in %s treated as missing",
                       unknown, path)
    return sample_ids, list(snps.values()), unknown


def read_phenotypes(path, format_spec: FormatSpec = None):
    """Read phenotype file

    Returns the phenotype rows and the covariate names.
    """
    format_spec = format_spec or FormatSpec()
    try:
        with format_spec.reader_format.reader(path,
                                              format_spec.columns) as reader:
            rows = list(reader)
    except (ValueError, TypeError) as exc:
        raise DatasetError("malformed phenotype file %s: %s" %
                           (path, exc)) from exc
    if not rows:
        raise DatasetError("empty phenotype file %s" % path)
    ids = [x.sample_id for x in rows]
    if len(set(ids)) != len(ids):
        raise DatasetError("duplicated sample ID in %s" % path)
    for row in rows:
        if np.isnan(row.phenotype):
            raise DatasetError("missing phenotype for sample %s" %
                               row.sample_id)
    return rows, reader.row_reader.extra_headings


def load_dataset(genotype_path, phenotype_path,
                 format_spec: FormatSpec = None):
    """Load dataset from genotype and phenotype files"""
    format_spec = format_spec or FormatSpec()
    rows, names = read_phenotypes(phenotype_path, format_spec)
    by_id = {x.sample_id: x for x in rows}
    sexes = {k: v.sex.code for k, v in by_id.items()}
    sample_ids, snps, _ = read_genotypes(genotype_path, sexes)

    # Align phenotype rows to genotype file sample order
    extra = set(by_id) - set(sample_ids)
    if extra:
        raise DatasetError("sample ID mismatch: %s has no genotypes" %
                           sorted(extra)[0])
    ordered = [by_id[x] for x in sample_ids]
    covariates = np.array([x.covariates for x in ordered], dtype=float)
    logger.info("Loaded %d samples and %d SNPs", len(sample_ids), len(snps))
    return Dataset(
        sample_ids=sample_ids,
        sexes=[x.sex.code for x in ordered],
        phenotype=[x.phenotype for x in ordered],
        snps=snps,
        covariates=covariates if names else None,
        covariate_names=names,
        phenotype_kind=format_spec.phenotype_kind,
    )

