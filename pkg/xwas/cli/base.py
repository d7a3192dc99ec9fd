"""Command line base classes"""

from argparse import Namespace
from configparser import ConfigParser, DEFAULTSECT
from contextlib import contextmanager
from dataclasses import dataclass
import logging
import os.path
import sys
from typing import ClassVar
from ..record import parse_bool, write_records

__all__ = [
    'Command',
    'OutputCommand',
]


@dataclass
class Command:
    """Command line command"""

    args: Namespace
    """Parsed arguments"""

    section: ClassVar[str] = DEFAULTSECT
    """Configuration file section"""

    @classmethod
    def init_parser(cls, parser):
        """Initialise argument parser"""

        # Use class documentation as subcommand description
        parser.description = cls.__doc__

        # Add common argument definitions
        parser.add_argument('-d', '--debug', action='store_true',
                            help="Enable debug logging")
        parser.add_argument('-c', '--config', help="Configuration file")

    def __call__(self):

        # Enable debug logging, if applicable
        logging.basicConfig(
            level=logging.DEBUG if self.args.debug else logging.WARNING
        )

        # Execute command
        return self.execute()

    def execute(self):
        """Execute command"""
        pass

    @property
    def config(self):
        """Configuration"""
        config = ConfigParser()
        config.read([self.args.config] if self.args.config else
                    ['xwas.ini', os.path.expanduser('~/.xwas.ini')])
        return config

    def option(self, name, parse=str, default=None, many=False):
        """Get option value

        An option given on the command line takes precedence over the
        same option in the command's configuration file section, which
        in turn takes precedence over the default value.  Options
        accepting many values are given as whitespace-separated lists
        in the configuration file.
        """
        value = getattr(self.args, name, None)
        if value is None:
            value = self.config_value(name)
            if value is not None and many:
                value = value.split()
        if value is None:
            return default
        try:
            if many:
                return [parse(x) for x in value]
            return parse(value)
        except ValueError as exc:
            raise SystemExit(
                "Invalid option '%s': %s" % (name, exc)
            ) from exc

    def config_value(self, name):
        """Get configuration file option value (as text)"""
        config = self.config
        section = self.section
        if section not in config:
            section = config.default_section
        return config.get(section, name, fallback=None)

    def required(self, name, parse=str):
        """Get mandatory option value"""
        value = self.option(name, parse)
        if value is None:
            raise SystemExit("Missing option '%s'" % name)
        return value

    def flag(self, name):
        """Get boolean option value"""
        if getattr(self.args, name, False):
            return True
        value = self.config_value(name)
        try:
            return value is not None and parse_bool(value)
        except ValueError as exc:
            raise SystemExit(
                "Invalid option '%s': %s" % (name, exc)
            ) from exc


class OutputCommand(Command):
    """Command producing a results table"""

    delimiter: ClassVar[str] = '\t'
    """Output column delimiter"""

    @classmethod
    def init_parser(cls, parser):
        super().init_parser(parser)
        parser.add_argument('-o', '--out', help="Output file")

    @contextmanager
    def output(self):
        """Open output file"""
        path = self.option('out')
        if path is None or path == '-':
            yield sys.stdout
        else:
            with open(path, 'w', encoding='utf8', newline='') as f:
                yield f

    def write(self, records, Record=None):
        """Write results table"""
        with self.output() as f:
            write_records(records, f, Record=Record, delimiter=self.delimiter)
