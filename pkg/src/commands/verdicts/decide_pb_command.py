from commands.abstract.command import Command, CommandOptions
from converters import document_converter
from decide.criteria import decide_pb_chow, decide_pb_split_same_base
from decide.verdict import Fidelity
from schemas import DecidePbQuery, OutputDocument, SplitBundleDescription


class DecidePbCommand(Command[DecidePbQuery]):
    """
    Chow-ring isomorphism of P(E) and P(F) over projective spaces. Split bundles on the same base
    are compared exactly; everything else is decided on Chern classes over different bases.
    """

    query_schema = DecidePbQuery
    fidelity = Fidelity.chern_level

    def run(self, query: DecidePbQuery, options: CommandOptions) -> OutputDocument:
        if isinstance(query.E, SplitBundleDescription) and isinstance(
            query.F, SplitBundleDescription
        ):
            E = document_converter.bundle_to_split(query.E, "E")
            F = document_converter.bundle_to_split(query.F, "F")
            if E.base_dim == F.base_dim:
                verdict = decide_pb_split_same_base(E, F)
                return OutputDocument(
                    command=self.command_name.value,
                    verdict=document_converter.verdict_to_record(verdict),
                )
        E = document_converter.bundle_to_chern_vector(query.E, "E")
        F = document_converter.bundle_to_chern_vector(query.F, "F")
        verdict = decide_pb_chow(E, F)
        return OutputDocument(
            command=self.command_name.value,
            verdict=document_converter.verdict_to_record(verdict),
        )
