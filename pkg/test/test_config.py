"""Simulation configuration tests"""

from xwas.family import Family
from xwas.genetics.genotype import Chromosome
from xwas.sim.config import ConfigError, SimConfig
from . import TestCase


class ConfigTest(TestCase):
    """Simulation configuration tests"""

    def test_defaults(self):
        """Test default configuration"""
        config = SimConfig()
        self.assertEqual(config.n, 1000)
        self.assertEqual(config.f_male, 0.5)
        self.assertEqual(config.family, Family.LINEAR)
        self.assertEqual(config.chromosome, Chromosome.X)
        self.assertEqual(config.effects.means, (0.0,) * 5)
        self.assertEqual(config, SimConfig.from_text(''))

    def test_file(self):
        """Test configuration file"""
        config = SimConfig.from_file(self.files / 'sim.cfg')
        self.assertEqual(config.n, 400)
        self.assertEqual(config.replicates, 20)
        self.assertEqual(config.seed, 7)
        self.assertEqual(config.pop.f_male, 0.2)
        self.assertEqual(config.pop.sex_ratio, 0.4)
        self.assertEqual(config.effects.means, (-0.2, 0.3, 0.2, 0.0, 0.2))
        self.assertEqual(config.effects.sigma2, 4.0)

    def test_values(self):
        """Test parsing of typed values"""
        config = SimConfig.from_text(
            'hwe = false\n'
            'female_genotype_freqs = 0.5, 0.3, 0.2\n'
            'chromosome = A\n'
            'family = logistic\n'
        )
        self.assertFalse(config.hwe)
        self.assertEqual(config.female_genotype_freqs, (0.5, 0.3, 0.2))
        self.assertAlmostEqual(config.pop.female_allele_frequency, 0.35)
        self.assertEqual(config.chromosome, Chromosome.AUTOSOME)
        self.assertEqual(config.effects.family, Family.LOGISTIC)

    def test_hash(self):
        """Test configuration hash"""
        config = SimConfig.from_text('n = 200\nseed = 3')
        self.assertEqual(len(config.config_hash), 12)
        self.assertEqual(config.config_hash,
                         SimConfig(n=200, seed=3).config_hash)
        self.assertNotEqual(config.config_hash,
                            SimConfig(n=200, seed=4).config_hash)
        self.assertEqual(SimConfig.from_json(config.to_json()), config)

    def test_unknown(self):
        """Test unknown configuration key"""
        with self.assertRaisesRegex(ConfigError, 'Unknown .* "beta_a"'):
            SimConfig.from_text('beta_a = 0.3')

    def test_invalid(self):
        """Test invalid configuration values"""
        for text in ('n = 0', 'n = many', 'replicates = 0', 'alpha = 1',
                     'seed = -1', 'f_female = 0', 'f_male = 1.2',
                     'sex_ratio = 0', 'family = probit', 'chromosome = Y',
                     'hwe = maybe', 'hwe = false', 'sigma2 = 0',
                     'female_genotype_freqs = 0.5,0.5,0.5\nhwe = false',
                     'n'):
            with self.subTest(text=text):
                with self.assertRaises(ConfigError):
                    SimConfig.from_text(text)
        with self.assertRaises(ConfigError):
            SimConfig(n=0)
