import logging

from commands.abstract.command import Command, CommandOptions
from converters import document_converter
from schemas import OutputDocument, RingQuery


class RingCommand(Command[RingQuery]):
    """The presentation and Poincaré polynomial of a tower or multiprojective bundle."""

    query_schema = RingQuery

    def run(self, query: RingQuery, options: CommandOptions) -> OutputDocument:
        ring = document_converter.space_to_ring(query.space, "space")
        logging.debug(f"Constructed {ring} with {ring.var_count} variables")
        return OutputDocument(
            command=self.command_name.value, ring=document_converter.ring_to_record(ring)
        )
