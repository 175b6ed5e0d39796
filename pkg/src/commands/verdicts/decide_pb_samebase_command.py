from commands.abstract.command import Command, CommandOptions
from converters import document_converter
from decide.criteria import decide_pb_split_same_base
from decide.verdict import Fidelity
from schemas import DecidePbSamebaseQuery, OutputDocument


class DecidePbSamebaseCommand(Command[DecidePbSamebaseQuery]):
    query_schema = DecidePbSamebaseQuery
    fidelity = Fidelity.split_exact

    def run(self, query: DecidePbSamebaseQuery, options: CommandOptions) -> OutputDocument:
        E = document_converter.bundle_to_split(query.E, "E")
        F = document_converter.bundle_to_split(query.F, "F")
        verdict = decide_pb_split_same_base(E, F)
        return OutputDocument(
            command=self.command_name.value,
            verdict=document_converter.verdict_to_record(verdict),
        )
