import abc
import dataclasses
import logging
from typing import Any, Generic, Type, TypeVar

import pydantic

from commands.command_names import CommandName
from converters import document_converter
from decide.criteria import declined_verdict
from decide.verdict import Fidelity
from errors import HypothesisViolation, InputDocumentError, UsageError
from schemas import OutputDocument

QUERY = TypeVar("QUERY", bound=pydantic.BaseModel)


@dataclasses.dataclass(frozen=True)
class CommandOptions:
    # --bound of the command line; None when not given
    bound: int | None = None
    default_bound: int = 3
    workers: int = 1
    fidelity_note: bool = False


def _field_path(location: tuple) -> str:
    return ".".join(str(part) for part in location) or "<document>"


class Command(abc.ABC, Generic[QUERY]):
    """For every subcommand of the command line, this Command should be implemented."""

    query_schema: Type[QUERY]
    # Verdict commands answer hypothesis violations with a declined verdict of this fidelity
    fidelity: Fidelity | None = None

    @property
    def command_name(self) -> CommandName:
        """The subcommand of this command"""
        return CommandName.from_class(self.__class__)

    def parse(self, document: Any) -> QUERY:
        """Validate the input document against the query schema of this command."""
        if not isinstance(document, dict):
            raise InputDocumentError("<document>: the input document must be a JSON object")
        query = document.get("query")
        if query is not None and query != self.command_name.value:
            raise UsageError(
                f"The input document is a '{query}' query, not a '{self.command_name.value}' one."
            )
        try:
            return self.query_schema.model_validate(document)
        except pydantic.ValidationError as e:
            problems = "; ".join(
                f"{_field_path(error['loc'])}: {error['msg']}" for error in e.errors()
            )
            raise InputDocumentError(problems)

    def execute(self, document: Any, options: CommandOptions) -> OutputDocument:
        query = self.parse(document)
        logging.info(f"Running {self.command_name.value}")
        try:
            output = self.run(query, options)
        except HypothesisViolation as e:
            if self.fidelity is None:
                raise
            logging.info(f"Hypotheses of {self.command_name.value} do not hold: {e.detail}")
            verdict = declined_verdict(e, self.fidelity)
            output = OutputDocument(
                command=self.command_name.value,
                verdict=document_converter.verdict_to_record(verdict),
            )
        if options.fidelity_note and output.verdict is not None:
            output.fidelity_note = Fidelity(output.verdict.fidelity).note()
        return output

    @abc.abstractmethod
    def run(self, query: QUERY, options: CommandOptions) -> OutputDocument:
        """Compute the output of this command"""
        pass
