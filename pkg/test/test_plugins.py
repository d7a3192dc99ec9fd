"""Tabular data format tests"""

from xwas.genetics.genotype import Sex
from xwas.plugins.excel import ExcelPhenotypeRow, parse_cell_text
from xwas.plugins.tabular import PhenotypeRow, TabularReader
from xwas.plugins.tsv import CsvFormat, TsvFormat
from . import TestCase


class TabularTest(TestCase):
    """Tabular data format tests"""

    def test_reader(self):
        """Test reading phenotype rows"""
        data = [
            ['age', 'sample_id', 'phenotype', 'sex', 'pc1'],
            ['40', 'S1', '1.5', 'F', '0.1'],
            ['', '', '', '', ''],
            ['35', 'S2', 'NA', 'M', '-0.2'],
        ]
        reader = TabularReader(data, PhenotypeRow)
        rows = list(reader)
        self.assertEqual(len(rows), 2)
        self.assertEqual(rows[0].sample_id, 'S1')
        self.assertIs(rows[0].sex, Sex.FEMALE)
        self.assertEqual(rows[0].covariates, (40.0, 0.1))
        self.assertNotEqual(rows[1].phenotype, rows[1].phenotype)
        self.assertEqual(reader.row_reader.extra_headings, ['age', 'pc1'])

    def test_mapping(self):
        """Test column heading mapping"""
        data = [['ID', 'Gender', 'BMI'], ['S1', 'M', '24.1']]
        rows = list(TabularReader(data, PhenotypeRow, mapping={
            'sample_id': 'ID', 'sex': 'Gender', 'phenotype': 'BMI',
        }))
        self.assertEqual(rows, [PhenotypeRow('S1', Sex.MALE, 24.1, ())])
        with self.assertRaisesRegex(ValueError, "Missing column 'BMI'"):
            list(TabularReader([['ID', 'sex']], PhenotypeRow,
                               mapping={'sample_id': 'ID',
                                        'phenotype': 'BMI'}))
        with self.assertRaises(ValueError):
            list(TabularReader([['sample_id', 'sex', 'phenotype'],
                                ['S1', 'U', '1']], PhenotypeRow))

    def test_excel_cells(self):
        """Test Excel cell value parsing"""
        self.assertEqual(parse_cell_text(1001.0), '1001')
        self.assertEqual(parse_cell_text(' S1 '), 'S1')
        row = ExcelPhenotypeRow.from_tabular(sample_id=17.0, sex='F',
                                             phenotype=0.5, covariates=[])
        self.assertEqual(row.sample_id, '17')

    def test_files(self):
        """Test delimited file formats"""
        with TsvFormat().reader(self.files / 'phenotypes.tsv') as reader:
            rows = list(reader)
        self.assertEqual([x.sample_id for x in rows], ['S1', 'S2', 'S3'])
        with CsvFormat().reader(self.files / 'phenotypes.csv') as reader:
            rows = list(reader)
        self.assertEqual([x.phenotype for x in rows], [1.0, 0.0, 1.0])
