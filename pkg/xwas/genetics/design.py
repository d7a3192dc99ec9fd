"""Regression models and design matrices

Each regression model is a nested subset of the covariates
(1, S, G_A, G_D, GS) together with the block of coefficients tested
under the null hypothesis:

========= ==================== ============
Model     Covariates           Tested
========= ==================== ============
additive  1, G_A               G_A
genotypic 1, G_A, G_D          G_A, G_D
M0        1, G_A               G_A
M1        1, S, G_A            G_A
M2        1, S, G_A, G_D       G_A, G_D
M3        1, S, G_A, GS        G_A, GS
M4        1, S, G_A, G_D, GS   G_A, G_D, GS
========= ==================== ============

Environmental covariates are appended after the genetic covariates
and are never tested.

>>> spec = ModelSpec(ModelId.M1)
>>> X = build_design([0, 1, 2, 3, 4], [0, 0, 0, 1, 1], spec)
>>> X.labels
['1', 'S', 'G_A']
>>> X.values[:, 2]
array([0. , 0.5, 1. , 0. , 1. ])
>>> X.tested
(2,)
"""

from dataclasses import dataclass, field, replace
from enum import Enum
import logging
import re
from typing import List, Tuple
import numpy as np
from ..family import Family
from .genotype import (Chromosome, CodingScheme, GenotypeState, Genotype,
                       validate_states, risk_counts, additive_codes,
                       dominant_codes)

__all__ = [
    'DegenerateSnpError',
    'Term',
    'ModelId',
    'ModelSpec',
    'DesignMatrix',
    'as_states',
    'build_design',
    'reparametrized_columns',
    'reparametrized_design',
]

logger = logging.getLogger(__name__)


class DegenerateSnpError(ValueError):
    """SNP carries no usable genotype variation"""

    def __str__(self):
        return "degenerate SNP: %s" % self.args[0]


class Term(Enum):
    """Model covariate"""

    INTERCEPT = '1'
    SEX = 'S'
    ADDITIVE = 'G_A'
    DOMINANT = 'G_D'
    INTERACTION = 'GS'


class ModelId(Enum):
    """Regression model"""

    ADDITIVE = 'additive'
    GENOTYPIC = 'genotypic'
    M0 = 'M0'
    M1 = 'M1'
    M2 = 'M2'
    M3 = 'M3'
    M4 = 'M4'

    @property
    def terms(self):
        """Covariates, in design matrix column order"""
        return MODEL_TERMS[self]

    @property
    def tested(self):
        """Tested covariates"""
        return MODEL_TESTED[self]

    @property
    def autosomal(self):
        """Model is restricted to autosome SNPs"""
        return self in (ModelId.ADDITIVE, ModelId.GENOTYPIC)

    @property
    def full(self):
        """Saturated model within which this model is nested"""
        return ModelId.GENOTYPIC if self.autosomal else ModelId.M4

    def nested_in(self, other):
        """Check that every covariate of this model appears in another"""
        return set(self.terms) <= set(other.terms)


MODEL_TERMS = {
    ModelId.ADDITIVE: (Term.INTERCEPT, Term.ADDITIVE),
    ModelId.GENOTYPIC: (Term.INTERCEPT, Term.ADDITIVE, Term.DOMINANT),
    ModelId.M0: (Term.INTERCEPT, Term.ADDITIVE),
    ModelId.M1: (Term.INTERCEPT, Term.SEX, Term.ADDITIVE),
    ModelId.M2: (Term.INTERCEPT, Term.SEX, Term.ADDITIVE, Term.DOMINANT),
    ModelId.M3: (Term.INTERCEPT, Term.SEX, Term.ADDITIVE, Term.INTERACTION),
    ModelId.M4: (Term.INTERCEPT, Term.SEX, Term.ADDITIVE, Term.DOMINANT,
                 Term.INTERACTION),
}

MODEL_TESTED = {
    ModelId.ADDITIVE: (Term.ADDITIVE,),
    ModelId.GENOTYPIC: (Term.ADDITIVE, Term.DOMINANT),
    ModelId.M0: (Term.ADDITIVE,),
    ModelId.M1: (Term.ADDITIVE,),
    ModelId.M2: (Term.ADDITIVE, Term.DOMINANT),
    ModelId.M3: (Term.ADDITIVE, Term.INTERACTION),
    ModelId.M4: (Term.ADDITIVE, Term.DOMINANT, Term.INTERACTION),
}


@dataclass(frozen=True)
class ModelSpec:
    """Regression model specification"""

    model: ModelId
    """Model"""

    family: Family = Family.LINEAR
    """Response family"""

    scheme: CodingScheme = CodingScheme()
    """Additive coding scheme"""

    extra_covariate_count: int = 0
    """Number of environmental covariates appended to the design"""

    def __str__(self):
        if self.model in (ModelId.M3, ModelId.M4):
            return self.model.value
        if self.model.autosomal and self.scheme == CodingScheme():
            return self.model.value
        return '%s(%s)' % (self.model.value, self.scheme)

    @property
    def labels(self):
        """Column labels"""
        return [x.value for x in self.model.terms] + [
            'E%d' % (i + 1) for i in range(self.extra_covariate_count)
        ]

    @property
    def tested(self):
        """Indices of tested columns"""
        terms = self.model.terms
        return tuple(terms.index(x) for x in self.model.tested)

    @property
    def p(self):
        """Number of columns"""
        return len(self.model.terms) + self.extra_covariate_count

    @property
    def q(self):
        """Number of tested columns"""
        return len(self.model.tested)

    @property
    def chromosome(self):
        """Default chromosome kind for this model"""
        return Chromosome.AUTOSOME if self.model.autosomal else Chromosome.X

    def replace(self, **kwargs):
        """Copy with some fields replaced"""
        return replace(self, **kwargs)

    @classmethod
    def from_text(cls, text, **kwargs):
        """Parse model from its name (e.g. ``M1(R,N)`` or ``M1:R,N``)"""
        match = MODEL_PATTERN.match(text.strip())
        if not match:
            raise ValueError("Invalid model '%s'" % text)
        name = match.group('model')
        scheme = match.group('scheme') or match.group('alt')
        try:
            model = ModelId(name)
        except ValueError as exc:
            raise ValueError("Unknown model '%s'" % name) from exc
        if scheme is not None:
            kwargs['scheme'] = CodingScheme.from_text(scheme)
        return cls(model, **kwargs)


MODEL_PATTERN = re.compile(
    r'^(?P<model>\w+)(?:\((?P<scheme>[^)]*)\)|:(?P<alt>.*))?$'
)


@dataclass
class DesignMatrix:
    """Design matrix with a designated tested column block"""

    values: np.ndarray
    """Covariate values (one row per individual used)"""

    labels: List[str]
    """Column labels"""

    tested: Tuple[int, ...]
    """Indices of tested columns"""

    rows: np.ndarray = None
    """Indices of the individuals used, within the original sample"""

    excluded: int = 0
    """Number of individuals excluded for missing data"""

    untested: Tuple[int, ...] = field(init=False)
    """Indices of untested columns"""

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.rows is None:
            self.rows = np.arange(self.values.shape[0])
        self.untested = tuple(
            i for i in range(self.values.shape[1]) if i not in self.tested
        )

    @property
    def n(self):
        """Number of rows"""
        return self.values.shape[0]

    @property
    def p(self):
        """Number of columns"""
        return self.values.shape[1]

    @property
    def q(self):
        """Number of tested columns"""
        return len(self.tested)

    @property
    def untested_values(self):
        """Untested column block"""
        return self.values[:, self.untested]

    @property
    def tested_values(self):
        """Tested column block"""
        return self.values[:, self.tested]

    def select(self, y):
        """Select the rows of a per-individual vector used by this design"""
        return np.asarray(y)[self.rows]


def as_states(genotypes, chromosome=None, default=Chromosome.X):
    """Convert genotypes to a state array and chromosome kind"""
    genotypes = list(genotypes)
    if genotypes and isinstance(genotypes[0], Genotype):
        kinds = {x.chromosome for x in genotypes}
        if len(kinds) > 1:
            raise ValueError("genotypes from mixed chromosome kinds")
        if chromosome is None:
            chromosome = kinds.pop()
        genotypes = [x.state for x in genotypes]
    if chromosome is None:
        chromosome = default
    return np.asarray(genotypes, dtype=int), chromosome


def complete_cases(states, sexes, extra):
    """Identify individuals with no missing data"""
    keep = states != GenotypeState.MISSING
    if extra is not None:
        keep &= ~np.isnan(extra).any(axis=1)
    return np.flatnonzero(keep)


def assemble(columns, spec, extra, rows, excluded):
    """Construct design matrix from per-term columns"""
    values = np.column_stack([columns[x] for x in spec.model.terms] + (
        [extra[rows]] if extra is not None else []
    ))
    return DesignMatrix(values, spec.labels, spec.tested, rows=rows,
                        excluded=excluded)


def prepare(genotypes, sexes, spec, extra, chromosome):
    """Validate inputs and select complete cases"""
    states, chromosome = as_states(genotypes, chromosome, spec.chromosome)
    sexes = np.asarray(sexes, dtype=int)
    if len(states) != len(sexes):
        raise ValueError("length mismatch")
    if extra is not None:
        extra = np.asarray(extra, dtype=float).reshape(len(states), -1)
        if extra.shape[1] != spec.extra_covariate_count:
            raise ValueError("expected %d extra covariates, got %d" %
                             (spec.extra_covariate_count, extra.shape[1]))
    elif spec.extra_covariate_count:
        raise ValueError("missing extra covariates")
    if spec.model.autosomal and chromosome is not Chromosome.AUTOSOME:
        raise ValueError("%s model requires an autosome SNP" %
                         spec.model.value)
    rows = complete_cases(states, sexes, extra)
    if not len(rows):
        raise DegenerateSnpError("all genotypes missing")
    excluded = len(states) - len(rows)
    if excluded:
        logger.debug("Excluded %d incomplete cases", excluded)
    states, sexes = validate_states(states[rows], sexes[rows], chromosome)
    return states, sexes, extra, rows, chromosome, excluded


def build_design(genotypes, sexes, spec: ModelSpec, extra=None,
                 chromosome=None):
    """Construct the design matrix of a model

    Individuals with a missing genotype (or missing environmental
    covariate) are omitted.  Genotypes may be given as `Genotype`
    objects or as an array of `GenotypeState` values, in which case
    the chromosome kind defaults to autosomes for the additive and
    genotypic models and to the X chromosome otherwise.
    """
    states, sexes, extra, rows, chromosome, excluded = prepare(
        genotypes, sexes, spec, extra, chromosome
    )
    additive = additive_codes(states, sexes, spec.scheme, chromosome)
    if np.ptp(additive) == 0:
        raise DegenerateSnpError("constant additive covariate")
    columns = {
        Term.INTERCEPT: np.ones(len(rows)),
        Term.SEX: sexes.astype(float),
        Term.ADDITIVE: additive,
        Term.DOMINANT: dominant_codes(states),
        Term.INTERACTION: additive * sexes,
    }
    return assemble(columns, spec, extra, rows, excluded)


def check_frequency(name, value):
    """Check that an allele frequency lies strictly inside (0, 1)"""
    if not 0 < value < 1:
        raise ValueError("%s frequency %r outside (0, 1)" % (name, value))


def reparametrized_columns(counts, sexes, chromosome, f_female, f_male,
                           sex_ratio=0.5):
    """Centred covariate codes from risk-allele counts

    The codes are mutually uncorrelated under Hardy-Weinberg
    equilibrium at the given risk-allele frequencies: G_A* is the
    centred count, G_D* is the dominance deviation, S* is ±1, and GS*
    contrasts male genotypes against the female additive code.  Male
    GS* codes are scaled by (1−π)/π for a proportion π of males.
    """
    check_frequency("female", f_female)
    check_frequency("male", f_male)
    if not 0 < sex_ratio < 1:
        raise ValueError("sex ratio %r outside (0, 1)" % sex_ratio)
    counts = np.asarray(counts, dtype=float)
    male = np.asarray(sexes) == 1
    hemizygous = male & (chromosome is Chromosome.X)

    # Additive and sex contrasts
    additive = np.where(hemizygous, 2 * counts - 1, counts - 1)
    sex = np.where(male, 1.0, -1.0)

    # Dominance deviation (diploid individuals only)
    f = np.where(male, f_male, f_female)
    dominant = np.choose(counts.astype(int).clip(0, 2), [
        -2 * f ** 2, 2 * f * (1 - f), -2 * (1 - f) ** 2,
    ])
    dominant = np.where(hemizygous, 0.0, dominant)

    # Gene-sex interaction
    scale = f_female * (1 - f_female) / 2 * (1 - sex_ratio) / sex_ratio
    interaction = np.where(
        male,
        np.where(counts > 0, -scale / f_male, scale / (1 - f_male)),
        counts / 2 - f_female,
    )

    return {
        Term.INTERCEPT: np.ones(len(counts)),
        Term.SEX: sex,
        Term.ADDITIVE: additive,
        Term.DOMINANT: dominant,
        Term.INTERACTION: interaction,
    }


def reparametrized_design(genotypes, sexes, f_female, f_male,
                          spec: ModelSpec, extra=None, chromosome=None,
                          sex_ratio=0.5):
    """Construct the design matrix of a model in centred coding

    Frequencies refer to the risk allele of the model's coding scheme.
    For autosomes, the gene-sex interaction has no centred coding.
    """
    states, sexes, extra, rows, chromosome, excluded = prepare(
        genotypes, sexes, spec, extra, chromosome
    )
    if chromosome is Chromosome.AUTOSOME and (
            Term.INTERACTION in spec.model.terms):
        raise ValueError("no centred interaction coding for autosomes")
    counts = risk_counts(states, sexes, spec.scheme, chromosome)
    columns = reparametrized_columns(counts, sexes, chromosome, f_female,
                                     f_male, sex_ratio)
    return assemble(columns, spec, extra, rows, excluded)
