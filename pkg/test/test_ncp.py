"""Noncentrality parameter tests"""

import math
import numpy as np
from xwas.family import Family
from xwas.genetics.design import ModelId, ModelSpec, build_design
from xwas.genetics.genotype import CodingScheme
from xwas.stats.association import NestingError
from xwas.stats.ncp import (EffectSpec, PopulationSpec, Sweep,
                            autosome_curves, beta_from_group_means,
                            effective_additive, moment_matrix, ncp_asymptotic,
                            ncp_exact, ncp_misspecified, x_curves)
from xwas.stats.power import PowerQuery, max_power_loss, power
from . import TestCase

NO_XCI = CodingScheme.from_text('R,N')


class NcpTest(TestCase):
    """Noncentrality parameter tests"""

    def test_autosome(self):
        """Test autosome additive and genotypic ncps"""
        additive = ModelSpec(ModelId.ADDITIVE)
        genotypic = ModelSpec(ModelId.GENOTYPIC)
        pop = PopulationSpec(0.5)
        effects = EffectSpec.from_coefficients(0.3, 0.0)
        self.assertAlmostEqual(ncp_misspecified(effects, pop, additive, 1000),
                               11.25)
        self.assertAlmostEqual(ncp_misspecified(effects, pop, genotypic,
                                                1000), 11.25)
        pop = PopulationSpec(0.2)
        effects = EffectSpec.from_coefficients(0.3, -0.6)
        self.assertAlmostEqual(ncp_misspecified(effects, pop, additive, 1000),
                               0.288)
        self.assertAlmostEqual(ncp_misspecified(effects, pop, genotypic,
                                                1000), 9.504)

    def test_sample_size(self):
        """Test ncp scaling with sample size and residual variance"""
        spec = ModelSpec(ModelId.M4)
        pop = PopulationSpec(0.3, 0.25)
        effects = EffectSpec(-0.3, 0.1, 0.3, 0.0, 0.4)
        ncp = ncp_misspecified(effects, pop, spec, 1000)
        self.assertAlmostEqual(ncp_misspecified(effects, pop, spec, 4000),
                               4 * ncp)
        self.assertAlmostEqual(
            ncp_misspecified(effects.replace(sigma2=1.0), pop, spec, 1000),
            4 * ncp
        )
        self.assertAlmostEqual(
            ncp_misspecified(effects.replace(sigma2=1.0,
                                             family=Family.LOGISTIC),
                             pop, spec, 1000),
            ncp
        )

    def test_sex_confounding(self):
        """Test ncp of a sex-only effect in a model omitting sex

        Without inactivation at f = 0.5 with equal numbers of each sex,
        G_A has variance 0.4375 and covariance -0.125 with S.  A sex
        effect of 0.5 projects onto G_A with slope -0.0625 / 0.4375, so
        the ncp is 1000 · 0.0625² / 0.4375 / 4 = 2.232.
        """
        pop = PopulationSpec(0.5)
        effects = EffectSpec()
        m0 = ModelSpec(ModelId.M0, scheme=NO_XCI)
        ncp = ncp_misspecified(effects, pop, m0, 1000, sex_effect=0.5)
        self.assertAlmostEqual(ncp, 3.90625 / 1.75)
        self.assertAlmostEqual(power(PowerQuery(1, ncp, 0.05)), 0.32,
                               delta=0.02)
        self.assertAlmostEqual(ncp_misspecified(
            effects, pop, ModelSpec(ModelId.M0), 1000, sex_effect=0.5
        ), 0)
        for model in (ModelId.M1, ModelId.M2, ModelId.M3, ModelId.M4):
            with self.subTest(model=model):
                self.assertAlmostEqual(ncp_misspecified(
                    effects, pop, ModelSpec(model, scheme=NO_XCI), 1000,
                    sex_effect=0.5
                ), 0)

    def test_scheme_invariance(self):
        """Test M3 and M4 ncps are independent of coding scheme"""
        pop = PopulationSpec(0.3, 0.2, sex_ratio=0.4)
        effects = EffectSpec(-0.2, 0.3, 0.2, 0.1, 0.5)
        for model in (ModelId.M3, ModelId.M4):
            ncps = [ncp_misspecified(effects, pop, ModelSpec(model,
                                                             scheme=scheme),
                                     1000)
                    for scheme in CodingScheme.all()]
            with self.subTest(model=model):
                self.assertLess(np.ptp(ncps), 1e-8 * max(ncps))

    def test_nested(self):
        """Test sub-model ncps are bounded by the saturated model"""
        pop = PopulationSpec(0.2)
        rng = np.random.default_rng(4)
        for _ in range(10):
            effects = EffectSpec(*rng.uniform(-0.5, 0.5, 5))
            full = ncp_misspecified(effects, pop, ModelSpec(ModelId.M4), 1000)
            for scheme in CodingScheme.all():
                for model in (ModelId.M1, ModelId.M2, ModelId.M3):
                    spec = ModelSpec(model, scheme=scheme)
                    self.assertLessEqual(
                        ncp_misspecified(effects, pop, spec, 1000),
                        full * (1 + 1e-10)
                    )

    def test_exact(self):
        """Test exact ncp against its asymptotic limit"""
        n = 20000
        pop = PopulationSpec(0.3)
        spec = ModelSpec(ModelId.M4)
        states, sexes = self.sample(n, f=0.3)
        X = build_design(states, sexes, spec)
        beta = np.array([0.1, 0.2, 0.02, -0.03, 0.01])
        exact = ncp_exact(X, beta, Family.LINEAR, sigma2=1.0)
        P = moment_matrix(pop, spec)
        limit = ncp_asymptotic(P, beta[list(spec.tested)] * math.sqrt(n),
                               sigma2=1.0)
        self.assertLess(abs(exact / limit - 1), 0.05)
        beta[:2] = 0
        self.assertAlmostEqual(ncp_exact(X, beta, Family.LOGISTIC),
                               ncp_exact(X, beta, Family.LINEAR, sigma2=4.0))
        beta[list(spec.tested)] = 0
        self.assertEqual(ncp_exact(X, beta, Family.LINEAR), 0)

    def test_moment_matrix(self):
        """Test moment matrix entries"""
        P = moment_matrix(PopulationSpec(0.4, 0.2), ModelSpec(ModelId.M4),
                          chromosome=None)
        self.assertEqual(P.labels, ['1', 'S', 'G_A', 'G_D', 'GS'])
        self.assertEqual(P.tested, (2, 3, 4))
        self.assertEqual(P.untested, (0, 1))
        self.assertAlmostEqual(P['1', '1'], 1)
        self.assertAlmostEqual(P['1', 'S'], 0.5)
        self.assertAlmostEqual(P['S', 'GS'], 0.1)
        self.assertAlmostEqual(P['1', 'G_D'], 0.24)
        self.assertTrue(np.allclose(P.values, P.values.T))

    def test_effective_additive(self):
        """Test effective additive effect"""
        self.assertAlmostEqual(effective_additive(0.3, 0.6, 0.2), 0.8294,
                               places=4)
        self.assertAlmostEqual(effective_additive(0.3, 0.6, 0.5), 0.3)
        self.assertAlmostEqual(effective_additive(0.3, 0.0, 0.1), 0.3)
        with self.assertRaises(ValueError):
            effective_additive(0.3, 0.6, 1.0)

    def test_group_means(self):
        """Test coefficients reproducing group means"""
        effects = EffectSpec(-0.3, 0.0, 0.3, 0.0, 0.5)
        m4 = ModelSpec(ModelId.M4)
        fit = beta_from_group_means(effects, CodingScheme(), m4)
        self.assertFalse(fit.projected)
        self.assertAlmostEqual(fit['1'], -0.3)
        self.assertAlmostEqual(fit['S'], 0.3)
        self.assertAlmostEqual(fit['G_A'], 0.6)
        self.assertAlmostEqual(fit['G_D'], 0)
        self.assertAlmostEqual(fit['GS'], -0.1)
        fit = beta_from_group_means(effects, NO_XCI, m4)
        self.assertAlmostEqual(fit['G_A'], 0.3)
        self.assertAlmostEqual(fit['GS'], 0.2)
        fit = beta_from_group_means(EffectSpec(*[0.2] * 5), NO_XCI, m4)
        self.assertAlmostEqual(fit['1'], 0.2)
        self.assertTrue(np.allclose(fit.beta[1:], 0))

    def test_group_means_projected(self):
        """Test projection of group means onto a sub-model"""
        effects = EffectSpec(-0.3, 0.2, 0.3, 0.0, 0.5)
        fit = beta_from_group_means(effects, CodingScheme(),
                                    ModelSpec(ModelId.M1),
                                    pop=PopulationSpec(0.3))
        self.assertTrue(fit.projected)
        self.assertEqual(fit.labels, ['1', 'S', 'G_A'])

    def test_autosome_curves(self):
        """Test autosome power curves"""
        rows = autosome_curves()
        self.assertEqual(len(rows), 50)
        half = [x for x in rows if x.f == 0.5]
        for row in half:
            self.assertAlmostEqual(row.ncp_additive, 11.25)
            self.assertAlmostEqual(row.effective_additive, 0.3)
        ncps = [x.ncp_genotypic for x in half]
        self.assertEqual(int(np.argmin(ncps)), 12)
        for row in half:
            self.assertAlmostEqual(row.ncp_genotypic,
                                   11.25 + 62.5 * row.beta_d ** 2)
        low = [x for x in rows if x.f == 0.2]
        gain = max(x.power_genotypic - x.power_additive for x in low)
        self.assertGreater(gain, 0.35)

    def test_x_curves(self):
        """Test X chromosome power curves"""
        pop = PopulationSpec(0.2)
        cap = max_power_loss(1, 3, alpha_range=(2.8, 3.4),
                             ncp_range=(12, 15)).max_loss
        self.assertAlmostEqual(cap, 0.188, delta=0.001)
        for sweep in Sweep:
            rows = x_curves(sweep, pop)
            self.assertEqual(len(rows), 25)
            for row in rows:
                with self.subTest(sweep=sweep, value=row.value):
                    self.assertGreaterEqual(row.ncp_m4 * (1 + 1e-10),
                                            max(row.ncp_m1, row.ncp_m2,
                                                row.ncp_m3))
                    best = max(row.power_m1, row.power_m2, row.power_m3)
                    self.assertLessEqual(best - row.power_m4, cap + 1e-6)

    def test_errors(self):
        """Test invalid arguments"""
        with self.assertRaises(NestingError):
            ncp_misspecified(EffectSpec(), PopulationSpec(0.3),
                             ModelSpec(ModelId.M4), 1000,
                             true_model=ModelId.M1)
        for kwargs in ({'f_female': 0}, {'f_female': 1},
                       {'f_female': 0.3, 'f_male': 1.5},
                       {'f_female': 0.3, 'sex_ratio': 1},
                       {'f_female': 0.3, 'hwe': False},
                       {'f_female': 0.3, 'hwe': False,
                        'female_genotype_freqs': (0.5, 0.5, 0.5)},
                       {'f_female': 0.3,
                        'female_genotype_freqs': (0.5, 0.3, 0.2)}):
            with self.subTest(**kwargs):
                with self.assertRaises(ValueError):
                    PopulationSpec(**kwargs)
        with self.assertRaises(ValueError):
            EffectSpec(sigma2=0)
        with self.assertRaises(ValueError):
            EffectSpec(mu_R=math.nan)
        spec = ModelSpec(ModelId.M1)
        P = moment_matrix(PopulationSpec(0.3), spec)
        with self.assertRaises(ValueError):
            ncp_asymptotic(P, [1.0, 2.0])
        X = build_design([0, 1, 2, 3, 4], [0, 0, 0, 1, 1], spec)
        with self.assertRaises(ValueError):
            ncp_exact(X, [0.0, 1.0], Family.LINEAR)
