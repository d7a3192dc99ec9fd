"""Association scans

Each SNP is tested under a battery of models: the additive and
genotypic models for autosome SNPs, and the six X-chromosome tests
(M1 and M2 under each assumption about X-inactivation, and the
coding-invariant M3 and M4) for X SNPs.  The most robust test for the
SNP (genotypic for autosomes, M4 for the X chromosome) is repeated in
the ``recommended_p`` column of every row.

Failures affecting a single SNP never abort a scan: they are reported
as rows with no statistic and an explanatory note.
"""

import logging
from typing import Iterable, List
import numpy as np
from ..family import Family
from ..genetics.design import ModelId, ModelSpec, build_design
from ..genetics.genotype import Allele, Chromosome, CodingScheme, Inactivation
from ..parallel import parallel_map
from ..record import XwasRecord, xwasrecord
from ..sim.harness import invariance_audit
from ..stats.association import TestKind, run_test
from .dataset import Dataset, DatasetError, Snp
from .qc import QcThresholds, qc_check

__all__ = [
    'ScanRow',
    'AuditRow',
    'default_models',
    'recommended_model',
    'scan',
    'audit',
]

logger = logging.getLogger(__name__)

XCI = CodingScheme(Allele.ALT, Inactivation.INACTIVATED)
NO_XCI = CodingScheme(Allele.ALT, Inactivation.NOT_INACTIVATED)


@xwasrecord
class ScanRow(XwasRecord):
    """Association scan result row"""

    snp_id: str
    chrom: str
    model: str
    test: TestKind
    statistic: float
    df: int
    p_value: float
    n_used: int
    excluded_missing: int
    notes: str = None
    recommended_p: float = None

    @property
    def flagged(self):
        """Row carries no test result"""
        return self.p_value is None


@xwasrecord
class AuditRow(XwasRecord):
    """Coding scheme invariance audit row"""

    snp_id: str
    chrom: str
    model: str
    test: TestKind
    group: str
    discrepancy: float
    schemes: str = None
    notes: str = None


def default_models(chromosome, family=Family.LINEAR, covariates=0):
    """Default model battery for a chromosome kind"""
    if chromosome is Chromosome.AUTOSOME:
        specs = [ModelSpec(ModelId.ADDITIVE), ModelSpec(ModelId.GENOTYPIC)]
    else:
        specs = [
            ModelSpec(ModelId.M1, scheme=XCI),
            ModelSpec(ModelId.M1, scheme=NO_XCI),
            ModelSpec(ModelId.M2, scheme=XCI),
            ModelSpec(ModelId.M2, scheme=NO_XCI),
            ModelSpec(ModelId.M3, scheme=XCI),
            ModelSpec(ModelId.M4, scheme=XCI),
        ]
    return [x.replace(family=family, extra_covariate_count=covariates)
            for x in specs]


def recommended_model(chromosome):
    """Most robust model for a chromosome kind"""
    if chromosome is Chromosome.AUTOSOME:
        return ModelId.GENOTYPIC
    return ModelId.M4


def scan_family(ds: Dataset, family):
    """Check (or choose) the regression family for a dataset"""
    expected = ds.phenotype_kind.family
    if family is None:
        return expected
    if family is not expected:
        raise DatasetError("%s phenotype cannot be analysed with the %s "
                           "family" % (ds.phenotype_kind.value, family.value))
    return family


def snp_models(snp: Snp, models, family, covariates):
    """Models applicable to a SNP"""
    if models is None:
        return default_models(snp.chromosome, family, covariates)
    return [
        x.replace(family=family, extra_covariate_count=covariates)
        for x in models
        if not (x.model.autosomal and snp.chromosome is Chromosome.X)
    ]


def scan_snp(ds: Dataset, snp: Snp, models, tests, family,
             qc: QcThresholds = None) -> List[ScanRow]:
    """Run all tests for a single SNP"""
    rows = []
    note = None
    if qc is not None:
        report = qc_check(snp, ds.sexes, qc)
        if not report.passed:
            note = "QC: %s" % report.reason
    for spec in snp_models(snp, models, family, ds.covariate_count):
        for kind in tests:
            excluded = snp.missing_count
            row = ScanRow(snp.snp_id, snp.chromosome.value, str(spec), kind,
                          None, spec.q, None, ds.n - excluded, excluded,
                          notes=note)
            if note is None:
                try:
                    X = build_design(snp.states, ds.sexes, spec,
                                     extra=ds.covariates,
                                     chromosome=snp.chromosome)
                    result = run_test(X, X.select(ds.phenotype), kind, family)
                    row.statistic = result.statistic
                    row.p_value = result.p_value
                    row.n_used = X.n
                    row.excluded_missing = ds.n - X.n
                except (ArithmeticError, ValueError) as exc:
                    logger.debug("SNP %s %s %s failed: %s", snp.snp_id, spec,
                                 kind.value, exc)
                    row.notes = str(exc)
            rows.append((spec.model, row))

    # Fill in recommended p-values
    recommended = recommended_model(snp.chromosome)
    best = {row.test: row.p_value for model, row in rows
            if model is recommended}
    for _, row in rows:
        row.recommended_p = best.get(row.test)
    return [row for _, row in rows]


def min_p(rows: Iterable[ScanRow]):
    """Smallest p-value within a set of rows"""
    values = [x.p_value for x in rows if not x.flagged]
    return min(values) if values else np.inf


def scan(ds: Dataset, models: Iterable[ModelSpec] = None,
         tests: Iterable[TestKind] = (TestKind.WALD,), family: Family = None,
         workers=None, qc: QcThresholds = None) -> List[ScanRow]:
    """Scan all SNPs in a dataset

    Rows are grouped by SNP, with SNPs ordered by their smallest
    p-value across all tests (SNPs with no p-value last, in file
    order).
    """
    family = scan_family(ds, family)
    models = None if models is None else list(models)
    tests = list(tests)
    results = parallel_map(
        lambda snp: scan_snp(ds, snp, models, tests, family, qc=qc),
        ds.snps, workers,
    )
    order = sorted(range(len(results)), key=lambda i: (min_p(results[i]), i))
    return [row for i in order for row in results[i]]


def audit_snp(ds: Dataset, snp: Snp, model: ModelId, kind: TestKind,
              family: Family) -> List[AuditRow]:
    """Audit coding scheme invariance for a single SNP"""
    def flagged(note):
        return [AuditRow(snp.snp_id, snp.chromosome.value, model.value, kind,
                         None, None, notes=note)]

    if model.autosomal and snp.chromosome is Chromosome.X:
        return flagged("%s model requires an autosome SNP" % model.value)
    try:
        report = invariance_audit(snp.states, ds.sexes, ds.phenotype, model,
                                  family, kind, chromosome=snp.chromosome,
                                  covariates=ds.covariates)
    except (ArithmeticError, ValueError) as exc:
        logger.debug("SNP %s audit failed: %s", snp.snp_id, exc)
        return flagged(str(exc))
    return [
        AuditRow(snp.snp_id, snp.chromosome.value, model.value, kind, group,
                 discrepancy, schemes=' '.join(report.statistics))
        for group, discrepancy in report.discrepancies.items()
    ]


def audit(ds: Dataset, model: ModelId = ModelId.M4,
          kind: TestKind = TestKind.WALD, family: Family = None,
          workers=None) -> List[AuditRow]:
    """Audit coding scheme invariance for all SNPs in a dataset"""
    family = scan_family(ds, family)
    results = parallel_map(
        lambda snp: audit_snp(ds, snp, model, kind, family), ds.snps, workers,
    )
    return [row for rows in results for row in rows]
