from commands.abstract.command import Command, CommandOptions
from converters import document_converter
from decide.criteria import corollary43_report
from decide.verdict import Fidelity
from schemas import Cor43Query, OutputDocument


class Cor43Command(Command[Cor43Query]):
    """
    Chern-level report on the conclusions that homotopy equivalent P(E) and P(F) over P^m and
    P^n, m < n, must satisfy.
    """

    query_schema = Cor43Query
    fidelity = Fidelity.chern_level

    def run(self, query: Cor43Query, options: CommandOptions) -> OutputDocument:
        E = document_converter.bundle_to_chern_vector(query.E, "E")
        F = document_converter.bundle_to_chern_vector(query.F, "F")
        verdict = corollary43_report(E, F)
        return OutputDocument(
            command=self.command_name.value,
            verdict=document_converter.verdict_to_record(verdict),
        )
