"""
    Exception hierarchy for the partition sampler.

    Library code raises these typed errors; the CLI turns them into
    click exceptions with the appropriate exit status.
"""


class PartitionSamplerError(Exception):
    """Base class for all library errors."""


class GraphStructureError(PartitionSamplerError, ValueError):
    """
        Raised when a graph violates an operation's structural precondition.

        Examples: disconnected input where a dual is required, a non-cubic node
        for vertex replacement, a face that is not a triangle for T_d.
    """


class EmbeddingError(PartitionSamplerError, ValueError):
    """Raised for invalid rotation systems or when a plane operation lacks an embedding."""


class EnumerationGuardError(PartitionSamplerError):
    """Raised when a brute-force enumeration would exceed its configured guard."""


class NotSeriesParallelError(PartitionSamplerError, ValueError):
    """Raised when series-parallel reduction gets stuck."""


class TreewidthError(NotSeriesParallelError):
    """Raised when a graph has treewidth above two (no SP supergraph exists)."""


class InsufficientModulusError(PartitionSamplerError):
    """
        Raised when the remainder of a gadget count could reach the modulus.

        The quotient would be unreliable, so no answer is returned.
    """


class InadmissibleStateError(PartitionSamplerError, ValueError):
    """Raised when a chain state breaks connectivity, emptiness or population constraints."""


class NoSampleError(PartitionSamplerError):
    """Raised when there is nothing to sample, or when a retry budget is exhausted."""


class SchemaError(PartitionSamplerError, ValueError):
    """
        Raised for malformed graph or experiment files.

        Args:
            location: JSON path of the offending element, e.g. ``edges[3]``
            message: Description of the violation
    """

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"{location}: {message}")


class ExperimentError(PartitionSamplerError):
    """Wraps a module error with the experiment that triggered it."""

    def __init__(self, experiment_id: str, cause: Exception):
        self.experiment_id = experiment_id
        self.cause = cause
        super().__init__(f"experiment '{experiment_id}' failed: {cause}")
