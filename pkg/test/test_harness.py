"""Simulation harness tests"""

import numpy as np
from xwas.family import Family
from xwas.genetics.design import ModelId, ModelSpec
from xwas.genetics.genotype import Chromosome, CodingScheme
from xwas.sim.config import SimConfig
from xwas.sim.harness import (audit_groups, empirical_power,
                              invariance_audit, simulate_dataset,
                              simulate_genotypes, replicate_rng,
                              simulation_rows)
from xwas.stats.association import TestKind
from xwas.stats.ncp import PopulationSpec, ncp_misspecified
from xwas.stats.power import PowerQuery, power
from . import TestCase, long_test

NO_XCI = CodingScheme.from_text('R,N')


class HarnessTest(TestCase):
    """Simulation harness tests"""

    @staticmethod
    def config(**kwargs):
        """Construct small simulation configuration"""
        kwargs.setdefault('n', 300)
        kwargs.setdefault('f_female', 0.3)
        kwargs.setdefault('replicates', 200)
        kwargs.setdefault('seed', 11)
        return SimConfig(**kwargs)

    def assertScale(self, value, statistics, within=1e-8):
        """Assert discrepancy is negligible relative to the statistics"""
        self.assertLess(value, within * max(1.0, *statistics.values()))

    def test_reproducible(self):
        """Test replicate datasets depend only on seed and index"""
        config = self.config()
        first = simulate_dataset(config, 3)
        second = simulate_dataset(config, 3)
        other = simulate_dataset(config, 4)
        for x, y in zip(first, second):
            self.assertTrue(np.array_equal(x, y))
        self.assertFalse(np.array_equal(first[2], other[2]))
        reseeded = simulate_dataset(self.config(seed=12), 3)
        self.assertFalse(np.array_equal(first[2], reseeded[2]))

    def test_genotype_frequencies(self):
        """Test simulated genotype frequencies"""
        n = 40000
        states, sexes = simulate_genotypes(n, PopulationSpec(0.2, 0.4),
                                           Chromosome.X, replicate_rng(5, 0))
        female = states[sexes == 0]
        male = states[sexes == 1]
        self.assertAlmostEqual(len(male) / n, 0.5, delta=4 * 0.5 / n ** 0.5)
        for state, expected in zip(range(3), (0.64, 0.32, 0.04)):
            observed = np.mean(female == state)
            se = np.sqrt(expected * (1 - expected) / len(female))
            self.assertAlmostEqual(observed, expected, delta=4 * se)
        self.assertTrue(set(np.unique(male)) <= {3, 4})
        se = np.sqrt(0.24 / len(male))
        self.assertAlmostEqual(np.mean(male == 4), 0.4, delta=4 * se)
        states, sexes = simulate_genotypes(1000, PopulationSpec(0.2),
                                           Chromosome.AUTOSOME,
                                           replicate_rng(5, 1))
        self.assertTrue(set(np.unique(states)) <= {0, 1, 2})

    def test_size(self):
        """Test rejection rate under the null hypothesis"""
        config = self.config(replicates=400)
        for model in (ModelId.M1, ModelId.M4):
            with self.subTest(model=model):
                result = empirical_power(config, ModelSpec(model),
                                         TestKind.LRT)
                se = np.sqrt(0.05 * 0.95 / result.replicates)
                self.assertEqual(result.replicates, 400)
                self.assertEqual(result.excluded, 0)
                self.assertAlmostEqual(result.rate, 0.05, delta=4 * se)

    def test_sex_confounding(self):
        """Test inflated rejection rate of a model omitting sex"""
        config = self.config(n=1000, sex_effect=0.5, f_female=0.5,
                             replicates=400)
        spec = ModelSpec(ModelId.M0, scheme=NO_XCI)
        m0 = empirical_power(config, spec, TestKind.WALD)
        ncp = ncp_misspecified(config.effects, config.pop, spec, config.n,
                               sex_effect=config.sex_effect,
                               chromosome=config.chromosome)
        expected = power(PowerQuery(1, ncp, config.alpha))
        self.assertGreater(expected, 0.3)
        self.assertAlmostEqual(m0.rate, expected, delta=4 * m0.mc_se + 0.02)
        self.assertGreater(m0.rate, 0.05 + 5 * m0.mc_se)
        m1 = empirical_power(config, ModelSpec(ModelId.M1, scheme=NO_XCI),
                             TestKind.WALD)
        se = np.sqrt(0.05 * 0.95 / m1.replicates)
        self.assertAlmostEqual(m1.rate, 0.05, delta=4 * se)

    def test_workers(self):
        """Test results are independent of the number of workers"""
        config = self.config(mu_RR=0.3, mu_R=0.3, replicates=50)
        spec = ModelSpec(ModelId.M3)
        serial = empirical_power(config, spec, TestKind.SCORE, workers=1)
        threaded = empirical_power(config, spec, TestKind.SCORE, workers=4)
        self.assertEqual(serial, threaded)

    def test_errors(self):
        """Test invalid simulation requests"""
        config = self.config()
        with self.assertRaisesRegex(ValueError, "differs"):
            empirical_power(config, ModelSpec(ModelId.M1,
                                              family=Family.LOGISTIC),
                            TestKind.WALD)
        with self.assertRaisesRegex(ValueError, "requires an autosome"):
            empirical_power(config, ModelSpec(ModelId.ADDITIVE),
                            TestKind.WALD)

    def test_audit_groups(self):
        """Test coding scheme groups compared by audits"""
        self.assertEqual(list(audit_groups(ModelId.M4, Chromosome.X)),
                         ['all schemes'])
        self.assertEqual(list(audit_groups(ModelId.M3, Chromosome.X)),
                         ['all schemes'])
        groups = audit_groups(ModelId.M2, Chromosome.X)
        self.assertEqual(list(groups),
                         ['within XCI', 'within no-XCI', 'across XCI'])
        self.assertEqual(len(groups['across XCI']), 4)
        self.assertTrue(all(x.inactivated for x in groups['within XCI']))
        groups = audit_groups(ModelId.ADDITIVE, Chromosome.AUTOSOME)
        self.assertEqual(list(groups), ['risk allele', 'male baseline'])

    def test_audit(self):
        """Test invariance audits"""
        config = self.config(n=500, mu_rr=-0.2, mu_rR=0.1, mu_RR=0.3,
                             mu_R=0.4, sex_effect=0.2)
        states, sexes, y = simulate_dataset(config, 0)
        for kind in (TestKind.WALD, TestKind.SCORE, TestKind.LRT):
            with self.subTest(kind=kind):
                report = invariance_audit(states, sexes, y, ModelId.M4,
                                          Family.LINEAR, kind)
                self.assertEqual(len(report.statistics), 4)
                self.assertScale(report.discrepancies['all schemes'],
                                 report.statistics)
                report = invariance_audit(states, sexes, y, ModelId.M1,
                                          Family.LINEAR, kind)
                self.assertScale(report.discrepancies['within XCI'],
                                 report.statistics)
                self.assertScale(report.discrepancies['within no-XCI'],
                                 report.statistics)
                self.assertGreater(report.discrepancies['across XCI'], 1e-4)

    def test_audit_logistic(self):
        """Test invariance audit for a binary phenotype"""
        config = self.config(n=600, mu_rr=-0.5, mu_RR=0.5, mu_R=0.5,
                             family=Family.LOGISTIC)
        states, sexes, y = simulate_dataset(config, 1)
        report = invariance_audit(states, sexes, y, ModelId.M3,
                                  Family.LOGISTIC, TestKind.LRT)
        self.assertScale(report.discrepancies['all schemes'],
                         report.statistics, within=1e-6)

    def test_audit_autosome(self):
        """Test invariance audits on an autosome"""
        config = self.config(n=500, mu_rR=0.2, mu_RR=0.4,
                             chromosome=Chromosome.AUTOSOME)
        states, sexes, y = simulate_dataset(config, 2)
        report = invariance_audit(states, sexes, y, ModelId.M3,
                                  Family.LINEAR, TestKind.WALD,
                                  chromosome=Chromosome.AUTOSOME)
        self.assertEqual(len(report.statistics), 3)
        self.assertScale(report.discrepancies['risk allele'],
                         report.statistics)
        self.assertScale(report.discrepancies['male baseline'],
                         report.statistics)
        report = invariance_audit(states, sexes, y, ModelId.M1,
                                  Family.LINEAR, TestKind.WALD,
                                  chromosome=Chromosome.AUTOSOME)
        self.assertScale(report.discrepancies['risk allele'],
                         report.statistics)
        self.assertGreater(report.discrepancies['male baseline'], 1e-4)

    def test_analytic_power(self):
        """Test empirical power against analytic power"""
        config = self.config(n=500, replicates=300, mu_rr=-0.1, mu_RR=0.1,
                             mu_R=0.1, sigma2=1.0)
        rows = simulation_rows(config, [ModelId.M1, ModelId.M4],
                               [TestKind.WALD, TestKind.LRT])
        self.assertEqual(len(rows), 4)
        self.assertEqual({x.config_hash for x in rows}, {config.config_hash})
        for row in rows:
            with self.subTest(model=row.model, test=row.test):
                self.assertGreater(row.analytic_ncp, 0)
                self.assertAlmostEqual(row.rate, row.analytic_power,
                                       delta=4 * row.mc_se + 0.02)
        self.assertEqual([x.df for x in rows], [1, 1, 3, 3])

    @long_test
    def test_size_battery(self):
        """Test rejection rates of all models over many replicates"""
        config = self.config(n=1000, f_female=0.5, sex_effect=0.5,
                             replicates=10000)
        m0 = empirical_power(config, ModelSpec(ModelId.M0, scheme=NO_XCI),
                             TestKind.WALD)
        self.assertGreater(m0.rate, 3 * config.alpha)
        se = np.sqrt(config.alpha * (1 - config.alpha) / config.replicates)
        for model in (ModelId.M1, ModelId.M2, ModelId.M3, ModelId.M4):
            for kind in (TestKind.WALD, TestKind.SCORE, TestKind.LRT):
                with self.subTest(model=model, kind=kind):
                    result = empirical_power(config, ModelSpec(model), kind)
                    self.assertAlmostEqual(result.rate, config.alpha,
                                           delta=3 * se)

    @long_test
    def test_audit_battery(self):
        """Test invariance audits over many replicate datasets"""
        config = self.config(n=400, mu_rr=-0.2, mu_rR=0.2, mu_RR=0.2,
                             mu_R=0.3)
        for index in range(100):
            states, sexes, y = simulate_dataset(config, index)
            for model in (ModelId.M3, ModelId.M4):
                report = invariance_audit(states, sexes, y, model,
                                          Family.LINEAR, TestKind.LRT)
                self.assertScale(report.discrepancies['all schemes'],
                                 report.statistics)

    @long_test
    def test_ncp_battery(self):
        """Test simulated statistics against analytic noncentrality"""
        models = [ModelId.M1, ModelId.M2, ModelId.M3, ModelId.M4]
        for f in (0.2, 0.5):
            for sweep in ('mu_rR', 'mu_R'):
                for value in (-0.3, 0.3, 0.6):
                    means = {'mu_rr': -0.3, 'mu_RR': 0.3, 'mu_R': 0.3,
                             sweep: value}
                    config = self.config(n=1000, f_female=f, replicates=2000,
                                         alpha=0.0008, **means)
                    rows = simulation_rows(config, models, [TestKind.WALD])
                    for row in rows:
                        with self.subTest(f=f, sweep=sweep, value=value,
                                          model=row.model):
                            self.assertAlmostEqual(
                                row.mean_statistic, row.df + row.analytic_ncp,
                                delta=3 * row.statistic_se,
                            )
                            se = np.sqrt(row.analytic_power *
                                         (1 - row.analytic_power) /
                                         row.replicates)
                            self.assertAlmostEqual(row.rate,
                                                   row.analytic_power,
                                                   delta=3 * se + 1e-3)
