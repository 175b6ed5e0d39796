import typing  # noqa:F401 (flake8 raises incorrect 'Module imported but unused' error)

from .abstract.command import Command, CommandOptions  # noqa:F401
from .command_names import CommandName  # noqa:F401
from .rings.poincare_command import PoincareCommand
from .rings.ring_command import RingCommand
from .search.oracle_command import OracleCommand
from .verdicts.cor43_command import Cor43Command
from .verdicts.decide_mpb_command import DecideMpbCommand
from .verdicts.decide_pb_command import DecidePbCommand
from .verdicts.decide_pb_samebase_command import DecidePbSamebaseCommand
from .verdicts.decide_tower3_command import DecideTower3Command

commands = {
    c.command_name: c
    for c in (
        RingCommand(),
        PoincareCommand(),
        DecidePbCommand(),
        DecidePbSamebaseCommand(),
        DecideMpbCommand(),
        DecideTower3Command(),
        Cor43Command(),
        OracleCommand(),
    )
}  # type: typing.Dict[CommandName, Command]
