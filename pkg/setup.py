#!/usr/bin/env python3

"""Setup script"""

from setuptools import setup, find_packages

setup(
    long_description=open('README.md').read(),
    long_description_content_type='text/markdown',
    classifiers=[
        "Development Status :: 2 - Pre-Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: "
        "GNU General Public License v2 or later (GPLv2+)",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Bio-Informatics",
        "Topic :: Software Development :: Libraries",
    ],
    packages=find_packages(),
    install_requires=[
        'numpy',
        'psutil',
        'scipy',
        'setuptools',
        'simplejson',
        'xlrd',
    ],
    entry_points={
        'console_scripts': [
            'xwas=xwas.cli.registry:main',
        ],
        'xwas.cli.command': [
            'scan = xwas.cli.scan:ScanCommand',
            'audit = xwas.cli.scan:AuditCommand',
            'simulate = xwas.cli.simulate:SimulateCommand',
            'power surface = xwas.cli.power:PowerSurfaceCommand',
            'power loss = xwas.cli.power:PowerLossCommand',
            'power gain = xwas.cli.power:PowerGainCommand',
            'power crossover = xwas.cli.power:PowerCrossoverCommand',
            'power curves = xwas.cli.power:PowerCurvesCommand',
            'power autosome = xwas.cli.power:PowerAutosomeCommand',
        ],
    },
)
