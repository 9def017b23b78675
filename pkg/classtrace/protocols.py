"""
Protocol definitions for type-safe interfaces.

Witness builders and report producers are described here as Protocols so the
dispatcher and the exporter can work with any implementation that provides
the same call signature or methods.
"""

from typing import Any, Dict, Optional, Protocol, TypeGuard, runtime_checkable

# =============================================================================
# Witness Protocols
# =============================================================================


@runtime_checkable
class WitnessBuilderProtocol(Protocol):
    """A construction producing a verified pair (W, Q) with tr(WQ) = tau."""

    def __call__(
        self,
        omega: Any,
        psi: Any,
        tau: Any,
        *,
        seed: Optional[int] = None,
        config: Any = None,
    ) -> Any:
        """Build the pair.

        Args:
            omega: Class of W.
            psi: Class of Q.
            tau: Target trace.
            seed: Seed for any search fallback; defaults to the configured seed.
            config: EngineConfig with bounds; defaults to the library defaults.

        Returns:
            A verified WitnessPair.
        """
        ...


# =============================================================================
# Report Protocol
# =============================================================================


@runtime_checkable
class SerializableProtocol(Protocol):
    """Objects written by the JSON exporter."""

    def to_dict(self) -> Dict[str, Any]:
        """JSON-ready dictionary with a stable key order."""
        ...


# =============================================================================
# Type Checking Utilities
# =============================================================================


def is_serializable(obj: Any) -> TypeGuard[SerializableProtocol]:
    """Check if an object can be handed to the JSON exporter."""
    return callable(getattr(obj, "to_dict", None))
