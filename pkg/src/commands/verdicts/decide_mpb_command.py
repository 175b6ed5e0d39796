from commands.abstract.command import Command, CommandOptions
from converters import document_converter
from decide.criteria import decide_mpb_split
from decide.verdict import Fidelity
from schemas import DecideMpbQuery, OutputDocument


class DecideMpbCommand(Command[DecideMpbQuery]):
    """Isomorphism of multiprojective bundles of split bundles over projective spaces."""

    query_schema = DecideMpbQuery
    fidelity = Fidelity.split_exact

    def run(self, query: DecideMpbQuery, options: CommandOptions) -> OutputDocument:
        Es = [
            document_converter.bundle_to_split(bundle, f"E.bundles.{i}", query.E.base)
            for i, bundle in enumerate(query.E.bundles)
        ]
        Fs = [
            document_converter.bundle_to_split(bundle, f"F.bundles.{i}", query.F.base)
            for i, bundle in enumerate(query.F.bundles)
        ]
        verdict = decide_mpb_split(query.E.base, Es, query.F.base, Fs)
        return OutputDocument(
            command=self.command_name.value,
            verdict=document_converter.verdict_to_record(verdict),
        )
