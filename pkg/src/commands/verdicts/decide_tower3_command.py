from algebra.graded_ring import projective_space_ring, projectivize
from commands.abstract.command import Command, CommandOptions
from converters import document_converter
from decide.criteria import classify_tower3
from decide.verdict import Fidelity
from errors import ChowError, InputDocumentError
from schemas import DecideTower3Query, OutputDocument, Tower3


def _tower(tower: Tower3, path: str):
    """The first level as a Chern vector, and the second as a class on its projectivization."""
    first, second = tower.levels
    c1 = document_converter.level_to_chern_vector(tower.base, first, f"{path}.levels.0")
    try:
        ring = projectivize(projective_space_ring(tower.base), c1.total(), c1.rank, "u1")
    except ChowError as e:
        raise InputDocumentError(f"{path}.levels.0: {e.detail}")
    c2 = document_converter.level_to_chern_class(ring, second, f"{path}.levels.1")
    return c1, c2, second.bundle_rank


class DecideTower3Command(Command[DecideTower3Query]):
    """Necessary conditions for two height-3 projective bundle towers to be isomorphic."""

    query_schema = DecideTower3Query
    fidelity = Fidelity.chern_level

    def run(self, query: DecideTower3Query, options: CommandOptions) -> OutputDocument:
        cE1, cE2, rank_E2 = _tower(query.E, "E")
        cF1, cF2, rank_F2 = _tower(query.F, "F")
        verdict = classify_tower3(
            query.E.base,
            query.F.base,
            cE1.rank - 1,
            cE1,
            cE2,
            cF1,
            cF2,
            rank_E2=rank_E2,
            rank_F2=rank_F2,
        )
        return OutputDocument(
            command=self.command_name.value,
            verdict=document_converter.verdict_to_record(verdict),
        )
