from algebra.graded_ring import poincare_polynomial, render_poincare
from algebra.intpoly import IntPoly
from commands.abstract.command import Command, CommandOptions
from converters import document_converter
from decide.multiset import multiset_from_poincare
from schemas import OutputDocument, PoincareQuery


class PoincareCommand(Command[PoincareQuery]):
    """The Poincaré polynomial of a ring, and the dimensions of the product it is the series of."""

    query_schema = PoincareQuery

    def run(self, query: PoincareQuery, options: CommandOptions) -> OutputDocument:
        if query.space is not None:
            ring = document_converter.space_to_ring(query.space, "space")
            polynomial = poincare_polynomial(ring)
        else:
            polynomial = IntPoly.univariate(query.polynomial)
        multiset = multiset_from_poincare(polynomial)
        return OutputDocument(
            command=self.command_name.value,
            poincare=render_poincare(polynomial),
            multiset=list(multiset.dims),
        )
