from commands.abstract.command import Command, CommandOptions
from converters import document_converter
from errors import ChowError
from oracle.search import find_graded_iso, verify_matrix
from schemas import OracleQuery, OutputDocument


class OracleCommand(Command[OracleQuery]):
    """Bounded search for a degree-1 basis change between two presentations."""

    query_schema = OracleQuery

    def run(self, query: OracleQuery, options: CommandOptions) -> OutputDocument:
        R1 = document_converter.space_to_ring(query.R1, "R1")
        R2 = document_converter.space_to_ring(query.R2, "R2")
        bound = options.bound
        if bound is None:
            bound = query.bound if query.bound is not None else options.default_bound
        report = find_graded_iso(R1, R2, bound, workers=options.workers)
        verified = None
        if report.found is not None:
            verified = verify_matrix(R1, R2, report.found.rows)
            if not verified:
                raise ChowError(f"The matrix {report.found.as_list()} failed verification.")
        return OutputDocument(
            command=self.command_name.value,
            rings=[
                document_converter.ring_to_record(R1, with_basis=False),
                document_converter.ring_to_record(R2, with_basis=False),
            ],
            search=document_converter.report_to_record(report, verified),
        )
