"""Genotype states and covariate codings

Genotypes of a biallelic SNP with reference allele ``r`` and
alternative allele ``R`` are held as one of five states: the three
diploid female states ``rr``, ``rR`` and ``RR`` and the two hemizygous
male X-chromosome states ``r`` and ``R``.  Males on autosomes use the
three diploid states.

Each genotype state maps to an additive code determined by a coding
scheme: the choice of risk allele and the assumption made about
X-chromosome inactivation (XCI) in females.

>>> states = [Genotype(x) for x in GenotypeState if not x.is_missing]
>>> [code_additive(x, x.state.is_male, CodingScheme()) for x in states]
[0.0, 0.5, 1.0, 0.0, 1.0]

>>> noxci = CodingScheme(Allele.REF, Inactivation.NOT_INACTIVATED)
>>> [code_additive(x, x.state.is_male, noxci) for x in states]
[2.0, 1.0, 0.0, 1.0, 0.0]

>>> [code_interaction(x, x.state.is_male, noxci) for x in states]
[0.0, 0.0, 0.0, 1.0, 0.0]
"""

from dataclasses import dataclass
from enum import Enum, IntEnum
import numpy as np

__all__ = [
    'GenotypeError',
    'Chromosome',
    'Sex',
    'Allele',
    'Inactivation',
    'GenotypeState',
    'Genotype',
    'CodingScheme',
    'validate_states',
    'risk_counts',
    'additive_codes',
    'dominant_codes',
    'interaction_codes',
    'code_additive',
    'code_dominant',
    'code_interaction',
]


class GenotypeError(ValueError):
    """Genotype cannot be coded"""

    def __str__(self):
        return self.args[0]


class Chromosome(Enum):
    """Chromosome kind"""

    AUTOSOME = 'A'
    X = 'X'


class Sex(Enum):
    """Sex as recorded in phenotype files"""

    FEMALE = 'F'
    MALE = 'M'

    @property
    def code(self):
        """Sex indicator S (0 for females, 1 for males)"""
        return int(self is Sex.MALE)


class Allele(Enum):
    """SNP allele"""

    REF = 'r'
    ALT = 'R'


class Inactivation(Enum):
    """Assumed X-chromosome inactivation status in females"""

    INACTIVATED = 'I'
    NOT_INACTIVATED = 'N'


class GenotypeState(IntEnum):
    """Genotype state"""

    FEMALE_LOW = 0
    FEMALE_HET = 1
    FEMALE_HIGH = 2
    MALE_LOW = 3
    MALE_HIGH = 4
    MISSING = -1

    @property
    def is_male(self):
        """State is hemizygous (X-chromosome male)"""
        return self in (GenotypeState.MALE_LOW, GenotypeState.MALE_HIGH)

    @property
    def is_missing(self):
        """State is missing"""
        return self is GenotypeState.MISSING

    @property
    def symbol(self):
        """Conventional genotype symbol"""
        return SYMBOLS[self]


SYMBOLS = {
    GenotypeState.FEMALE_LOW: 'rr',
    GenotypeState.FEMALE_HET: 'rR',
    GenotypeState.FEMALE_HIGH: 'RR',
    GenotypeState.MALE_LOW: 'r',
    GenotypeState.MALE_HIGH: 'R',
    GenotypeState.MISSING: 'NA',
}

ALT_COUNT = np.array([0, 1, 2, 0, 1])
"""Copies of the alternative allele, indexed by genotype state"""


@dataclass(frozen=True)
class Genotype:
    """A single genotype"""

    state: GenotypeState
    """Genotype state"""

    chromosome: Chromosome = Chromosome.X
    """Chromosome kind"""

    def __post_init__(self):
        if self.state.is_male and self.chromosome is not Chromosome.X:
            raise GenotypeError("hemizygous genotype on autosome")


@dataclass(frozen=True)
class CodingScheme:
    """Additive covariate coding scheme"""

    risk: Allele = Allele.ALT
    """Allele whose copies are counted"""

    xci: Inactivation = Inactivation.INACTIVATED
    """Assumed X-inactivation status (ignored for autosomes)"""

    male_risk: Allele = None
    """Allele whose copies are counted in males (default: same as females)"""

    def __post_init__(self):
        if self.male_risk is None:
            object.__setattr__(self, 'male_risk', self.risk)

    def __str__(self):
        name = '%s,%s' % (self.risk.value, self.xci.value)
        if self.male_risk is not self.risk:
            name += ',male=%s' % self.male_risk.value
        return name

    @property
    def name(self):
        """Conventional name of the additive covariate"""
        return 'G_A,%s' % self

    @property
    def inactivated(self):
        """Scheme assumes X-inactivation"""
        return self.xci is Inactivation.INACTIVATED

    @classmethod
    def all(cls):
        """All four standard coding schemes"""
        return [cls(risk, xci) for xci in Inactivation for risk in Allele]

    @classmethod
    def from_text(cls, text):
        """Parse coding scheme from its name (e.g. ``R,N``)"""
        parts = [x.strip() for x in text.split(',')]
        try:
            risk, xci = Allele(parts[0]), Inactivation(parts[1])
            male_risk = None
            for part in parts[2:]:
                key, _, value = part.partition('=')
                if key != 'male':
                    raise ValueError(part)
                male_risk = Allele(value)
        except (IndexError, ValueError) as exc:
            raise ValueError("Invalid coding scheme '%s'" % text) from exc
        return cls(risk, xci, male_risk)


def validate_states(states, sexes, chromosome=Chromosome.X):
    """Check genotype states against sexes and chromosome kind"""
    states = np.asarray(states, dtype=int)
    sexes = np.asarray(sexes, dtype=int)
    if states.shape != sexes.shape:
        raise ValueError("length mismatch")
    if np.any(states == GenotypeState.MISSING):
        raise GenotypeError("missing genotype")
    hemizygous = states >= GenotypeState.MALE_LOW
    if chromosome is Chromosome.X:
        if np.any((sexes == 1) & ~hemizygous):
            raise GenotypeError("invalid male genotype")
        if np.any((sexes == 0) & hemizygous):
            raise GenotypeError("invalid female genotype")
    elif np.any(hemizygous):
        raise GenotypeError("hemizygous genotype on autosome")
    return states, sexes


def risk_counts(states, sexes, scheme, chromosome=Chromosome.X):
    """Copies of the risk allele carried by each individual"""
    states, sexes = validate_states(states, sexes, chromosome)
    male = sexes == 1
    alt = ALT_COUNT[states]
    ploidy = np.where(male & (chromosome is Chromosome.X), 1, 2)
    risk = np.where(male, scheme.male_risk is Allele.ALT,
                    scheme.risk is Allele.ALT)
    return np.where(risk, alt, ploidy - alt)


def additive_codes(states, sexes, scheme, chromosome=Chromosome.X):
    """Additive covariate G_A"""
    counts = risk_counts(states, sexes, scheme, chromosome).astype(float)
    if chromosome is Chromosome.X and scheme.inactivated:
        counts = np.where(np.asarray(sexes) == 1, counts, counts / 2)
    return counts


def dominant_codes(states):
    """Dominant covariate G_D (heterozygote indicator)"""
    states = np.asarray(states, dtype=int)
    if np.any(states == GenotypeState.MISSING):
        raise GenotypeError("missing genotype")
    return (states == GenotypeState.FEMALE_HET).astype(float)


def interaction_codes(states, sexes, scheme, chromosome=Chromosome.X):
    """Gene-sex interaction covariate GS = G_A × S"""
    return additive_codes(states, sexes, scheme, chromosome) * np.asarray(
        sexes, dtype=float
    )


def sex_code(s):
    """Sex indicator from a `Sex` or a 0/1 code"""
    return s.code if isinstance(s, Sex) else int(s)


def code_additive(g: Genotype, s, scheme: CodingScheme):
    """Additive code of a single genotype"""
    return float(additive_codes([g.state], [sex_code(s)], scheme,
                                g.chromosome)[0])


def code_dominant(g: Genotype):
    """Dominant code of a single genotype"""
    return float(dominant_codes([g.state])[0])


def code_interaction(g: Genotype, s, scheme: CodingScheme):
    """Gene-sex interaction code of a single genotype"""
    return float(interaction_codes([g.state], [sex_code(s)], scheme,
                                   g.chromosome)[0])
