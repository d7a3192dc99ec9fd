"""Association scan command line interface"""

from ..family import Family
from ..genetics.design import ModelId, ModelSpec
from ..plugins.tabular import PHENOTYPE_COLUMNS
from ..scan.dataset import (FormatSpec, PhenotypeKind, PHENOTYPE_FORMATS,
                            load_dataset)
from ..scan.qc import HweMethod, QcThresholds
from ..scan.runner import AuditRow, ScanRow, audit, scan
from ..stats.association import TestKind
from .base import OutputCommand

__all__ = [
    'DatasetCommand',
    'ScanCommand',
    'AuditCommand',
]


class DatasetCommand(OutputCommand):
    """Dataset commands"""

    @classmethod
    def init_parser(cls, parser):
        super().init_parser(parser)
        parser.add_argument('--geno', help="Genotype file")
        parser.add_argument('--pheno', help="Phenotype file")
        parser.add_argument('--pheno-format', choices=PHENOTYPE_FORMATS,
                            help="Phenotype file format")
        parser.add_argument('--sheet', help="Phenotype worksheet name")
        for column in PHENOTYPE_COLUMNS:
            parser.add_argument(
                '--%s' % column.dest.replace('_', '-'), dest=column.dest,
                help="Column heading for %s" % column.description,
            )
        parser.add_argument('--phenotype-kind',
                            choices=[x.value for x in PhenotypeKind],
                            help="Phenotype kind")
        parser.add_argument('--family', choices=[x.value for x in Family],
                            help="Regression family")
        parser.add_argument('--threads', help="Number of worker threads")

    @property
    def format_spec(self):
        """Phenotype file format specification"""
        columns = {
            x.name: self.option(x.dest) for x in PHENOTYPE_COLUMNS
            if self.option(x.dest) is not None
        }
        return FormatSpec(
            phenotype_format=self.option('pheno_format', default='tsv'),
            sheet=self.option('sheet'),
            columns=columns,
            phenotype_kind=self.option('phenotype_kind', PhenotypeKind),
        )

    @property
    def dataset(self):
        """Dataset"""
        return load_dataset(self.required('geno'), self.required('pheno'),
                            self.format_spec)

    @property
    def family(self):
        """Regression family (default: from phenotype kind)"""
        return self.option('family', Family)

    @property
    def threads(self):
        """Number of worker threads"""
        return self.option('threads', int)


class ScanCommand(DatasetCommand):
    """Run association tests for every SNP"""

    section = 'scan'

    @classmethod
    def init_parser(cls, parser):
        super().init_parser(parser)
        parser.add_argument('--models', nargs='+',
                            help="Models (e.g. M1(R,N))")
        parser.add_argument('--tests', nargs='+',
                            choices=[x.value for x in TestKind],
                            help="Tests")
        parser.add_argument('--alpha',
                            help="Report only SNPs with some p below alpha")
        parser.add_argument('--audit', action='store_true',
                            help="Audit coding scheme invariance instead")
        parser.add_argument('--no-qc', action='store_true',
                            help="Skip quality control filters")
        parser.add_argument('--qc-miss', help="Maximum missing fraction")
        parser.add_argument('--qc-mac',
                            help="Minimum minor allele count per sex")
        parser.add_argument('--qc-hwe', choices=[x.value for x in HweMethod],
                            help="Hardy-Weinberg equilibrium test")
        parser.add_argument('--qc-hwe-alpha',
                            help="Drop SNPs out of equilibrium at this level")

    @property
    def models(self):
        """Models (default: standard battery per chromosome kind)"""
        return self.option('models', ModelSpec.from_text, many=True)

    @property
    def tests(self):
        """Tests"""
        return self.option('tests', TestKind, default=[TestKind.WALD],
                           many=True)

    @property
    def qc(self):
        """Quality control thresholds (unless disabled)"""
        if self.flag('no_qc'):
            return None
        defaults = QcThresholds()
        return QcThresholds(
            max_missing=self.option('qc_miss', float, defaults.max_missing),
            min_mac=self.option('qc_mac', int, defaults.min_mac),
            hwe_method=self.option('qc_hwe', HweMethod, defaults.hwe_method),
            hwe_alpha=self.option('qc_hwe_alpha', float),
        )

    def execute(self):
        ds = self.dataset
        if self.flag('audit'):
            models = self.models or [ModelSpec(ModelId.M4)]
            rows = [row for spec in models for row in audit(
                ds, spec.model, self.tests[0], family=self.family,
                workers=self.threads,
            )]
            self.write(rows, AuditRow)
            return
        rows = scan(ds, models=self.models, tests=self.tests,
                    family=self.family, workers=self.threads, qc=self.qc)
        alpha = self.option('alpha', float)
        if alpha is not None:
            keep = {x.snp_id for x in rows
                    if x.p_value is not None and x.p_value < alpha}
            rows = [x for x in rows if x.snp_id in keep]
        self.write(rows, ScanRow)


class AuditCommand(DatasetCommand):
    """Compare test statistics across coding schemes for every SNP"""

    section = 'audit'

    @classmethod
    def init_parser(cls, parser):
        super().init_parser(parser)
        parser.add_argument('--model', choices=[x.value for x in ModelId],
                            help="Model (default: M4)")
        parser.add_argument('--test', choices=[x.value for x in TestKind],
                            help="Test (default: wald)")

    def execute(self):
        rows = audit(self.dataset,
                     model=self.option('model', ModelId, ModelId.M4),
                     kind=self.option('test', TestKind, TestKind.WALD),
                     family=self.family, workers=self.threads)
        self.write(rows, AuditRow)
