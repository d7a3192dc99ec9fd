"""Command line registry"""

from argparse import ArgumentParser, Action
from dataclasses import dataclass, field
from typing import Dict
from pkg_resources import EntryPoint, iter_entry_points
from ..scan.dataset import DatasetError
from ..sim.config import ConfigError

__all__ = [
    'XWAS_CLI_COMMAND',
    'BUILTIN_COMMANDS',
    'CommandRegistry',
    'commands',
    'main',
]


XWAS_CLI_COMMAND = 'xwas.cli.command'
"""Command line entry point name"""

BUILTIN_COMMANDS = [
    'scan = xwas.cli.scan:ScanCommand',
    'audit = xwas.cli.scan:AuditCommand',
    'simulate = xwas.cli.simulate:SimulateCommand',
    'power surface = xwas.cli.power:PowerSurfaceCommand',
    'power loss = xwas.cli.power:PowerLossCommand',
    'power gain = xwas.cli.power:PowerGainCommand',
    'power crossover = xwas.cli.power:PowerCrossoverCommand',
    'power curves = xwas.cli.power:PowerCurvesCommand',
    'power autosome = xwas.cli.power:PowerAutosomeCommand',
]
"""Commands registered when no installed entry points are found"""


@dataclass
class CommandRegistry:
    """Command registry

    Entry point names of several words (such as ``power loss``) become
    nested subcommands.
    """

    parser: ArgumentParser
    """Argument parser for this (sub)command"""

    subcommands: Dict[str, 'CommandRegistry'] = field(default_factory=dict)
    """Subcommands of this (sub)command"""

    subparsers: Action = field(default=None, repr=False)
    """Argument parser subparsers object (if subcommands exist)"""

    def subcommand(self, name):
        """Get or create a named subcommand"""
        if self.subparsers is None:
            self.subparsers = self.parser.add_subparsers(
                dest='subcommand', title='subcommands', required=True,
            )
        if name not in self.subcommands:
            parser = self.subparsers.add_parser(name)
            self.subcommands[name] = type(self)(parser)
        return self.subcommands[name]

    def register(self, group, fallback=()):
        """Register command entry points

        The fallback entry points are used when no installed entry
        points are found (e.g. when running from a source checkout).
        """
        entry_points = list(iter_entry_points(group)) or [
            EntryPoint.parse(x) for x in fallback
        ]
        for entry_point in entry_points:
            registry = self
            for name in entry_point.name.split():
                registry = registry.subcommand(name)
            if entry_point.dist is None:
                cls = entry_point.resolve()
            else:
                cls = entry_point.load()
            registry.parser.set_defaults(cls=cls)
            cls.init_parser(registry.parser)

    def command(self, args=None):
        """Construct command from arguments"""
        args = self.parser.parse_args(args)
        return args.cls(args)


commands = CommandRegistry(ArgumentParser(prog='xwas'))
"""Registry of all commands"""


def main(args=None):
    """Command line entry point"""
    command = commands.command(args)
    try:
        output = command()
    except (DatasetError, ConfigError, OSError) as exc:
        raise SystemExit(str(exc)) from exc
    if output is not None:
        print('\n'.join(output) if isinstance(output, list) else output)


# Register all known commands
commands.register(XWAS_CLI_COMMAND, BUILTIN_COMMANDS)


if __name__ == '__main__':
    main()
