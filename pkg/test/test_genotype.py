"""Genotype coding tests"""

from xwas.genetics.genotype import (Allele, Chromosome, CodingScheme,
                                    Genotype, GenotypeError, GenotypeState,
                                    Inactivation, Sex, additive_codes,
                                    code_additive, code_dominant,
                                    code_interaction, dominant_codes,
                                    interaction_codes, validate_states)
from . import TestCase

STATES = [0, 1, 2, 3, 4]
SEXES = [0, 0, 0, 1, 1]


class GenotypeTest(TestCase):
    """Genotype coding tests"""

    def test_additive_schemes(self):
        """Test additive codes under all four coding schemes"""
        expected = {
            'R,I': [0, 0.5, 1, 0, 1],
            'r,I': [1, 0.5, 0, 1, 0],
            'R,N': [0, 1, 2, 0, 1],
            'r,N': [2, 1, 0, 1, 0],
        }
        for scheme in CodingScheme.all():
            with self.subTest(scheme=str(scheme)):
                codes = additive_codes(STATES, SEXES, scheme)
                self.assertEqual(codes.tolist(), expected[str(scheme)])

    def test_single_codes(self):
        """Test coding of individual genotypes"""
        xci = CodingScheme(Allele.ALT, Inactivation.INACTIVATED)
        r_noxci = CodingScheme(Allele.REF, Inactivation.NOT_INACTIVATED)
        r_xci = CodingScheme(Allele.REF, Inactivation.INACTIVATED)
        het = Genotype(GenotypeState.FEMALE_HET)
        self.assertEqual(code_additive(het, Sex.FEMALE, xci), 0.5)
        self.assertEqual(code_additive(Genotype(GenotypeState.MALE_HIGH),
                                       Sex.MALE, r_noxci), 0)
        self.assertEqual(code_additive(Genotype(GenotypeState.FEMALE_LOW),
                                       0, r_xci), 1)
        self.assertEqual(code_dominant(het), 1)
        self.assertEqual(code_dominant(Genotype(GenotypeState.MALE_HIGH)), 0)
        self.assertEqual(code_dominant(Genotype(GenotypeState.FEMALE_HIGH)),
                         0)
        self.assertEqual(code_interaction(Genotype(GenotypeState.MALE_HIGH),
                                          1, xci), 1)
        self.assertEqual(code_interaction(het, 0, r_noxci), 0)
        self.assertEqual(code_interaction(Genotype(GenotypeState.MALE_LOW),
                                          1, r_noxci), 1)

    def test_heterozygote_midpoint(self):
        """Test female heterozygote codes at the homozygote midpoint"""
        for scheme in CodingScheme.all():
            with self.subTest(scheme=str(scheme)):
                low, het, high = additive_codes([0, 1, 2], [0, 0, 0], scheme)
                self.assertEqual(het, (low + high) / 2)

    def test_scheme_independent_columns(self):
        """Test that dominant codes and male interaction codes are shared"""
        self.assertEqual(dominant_codes(STATES).tolist(), [0, 1, 0, 0, 0])
        for risk in Allele:
            xci, noxci = (CodingScheme(risk, x) for x in Inactivation)
            self.assertEqual(interaction_codes(STATES, SEXES, xci).tolist(),
                             interaction_codes(STATES, SEXES, noxci).tolist())

    def test_autosome(self):
        """Test autosome coding (males diploid, no inactivation)"""
        scheme = CodingScheme(Allele.ALT, Inactivation.INACTIVATED)
        codes = additive_codes([0, 1, 2, 0, 1, 2], [0, 0, 0, 1, 1, 1],
                               scheme, Chromosome.AUTOSOME)
        self.assertEqual(codes.tolist(), [0, 1, 2, 0, 1, 2])
        swapped = CodingScheme(Allele.ALT, male_risk=Allele.REF)
        codes = interaction_codes([0, 1, 2, 0, 1, 2], [0, 0, 0, 1, 1, 1],
                                  swapped, Chromosome.AUTOSOME)
        self.assertEqual(codes.tolist(), [0, 0, 0, 2, 1, 0])

    def test_errors(self):
        """Test invalid genotypes"""
        scheme = CodingScheme()
        with self.assertRaisesRegex(GenotypeError, "missing genotype"):
            code_additive(Genotype(GenotypeState.MISSING), 0, scheme)
        with self.assertRaisesRegex(GenotypeError, "missing genotype"):
            dominant_codes([1, -1])
        with self.assertRaisesRegex(GenotypeError, "invalid male genotype"):
            code_additive(Genotype(GenotypeState.FEMALE_HET), 1, scheme)
        with self.assertRaisesRegex(GenotypeError, "invalid female genotype"):
            validate_states([3], [0])
        with self.assertRaisesRegex(GenotypeError, "on autosome"):
            Genotype(GenotypeState.MALE_LOW, Chromosome.AUTOSOME)
        with self.assertRaisesRegex(ValueError, "length mismatch"):
            validate_states([0, 1], [0])

    def test_scheme_text(self):
        """Test coding scheme names"""
        scheme = CodingScheme.from_text('R,N')
        self.assertEqual(scheme, CodingScheme(Allele.ALT,
                                              Inactivation.NOT_INACTIVATED))
        self.assertEqual(scheme.name, 'G_A,R,N')
        swapped = CodingScheme.from_text('r, I, male=R')
        self.assertEqual(swapped.male_risk, Allele.ALT)
        self.assertEqual(str(swapped), 'r,I,male=R')
        self.assertEqual(CodingScheme.from_text(str(swapped)), swapped)
        for text in ('R', 'X,I', 'R,N,female=r'):
            with self.subTest(text=text):
                with self.assertRaisesRegex(ValueError, "Invalid coding"):
                    CodingScheme.from_text(text)

    def test_states(self):
        """Test genotype state properties"""
        self.assertEqual([x.symbol for x in GenotypeState],
                         ['rr', 'rR', 'RR', 'r', 'R', 'NA'])
        self.assertTrue(GenotypeState.MALE_LOW.is_male)
        self.assertFalse(GenotypeState.FEMALE_LOW.is_male)
        self.assertTrue(GenotypeState(-1).is_missing)
        self.assertEqual(Sex('M').code, 1)
        self.assertEqual(len(CodingScheme.all()), 4)
