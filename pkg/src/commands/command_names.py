import enum
import re
from typing import Type


class CommandName(str, enum.Enum):
    ring = "ring"
    poincare = "poincare"
    decide_pb = "decide-pb"
    decide_pb_samebase = "decide-pb-samebase"
    decide_mpb = "decide-mpb"
    decide_tower3 = "decide-tower3"
    cor43 = "cor43"
    oracle = "oracle"

    @staticmethod
    def from_class(clazz: Type):
        class_name = clazz.__name__  # E.g. DecidePbSamebaseCommand
        name = class_name.removesuffix("Command")
        return CommandName(re.sub(r"(?<!^)(?=[A-Z])", "-", name).lower())
