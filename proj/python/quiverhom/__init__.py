"""Homological invariants of finite-dimensional path algebras.

Thin Python layer over the compiled ``_quiverhom`` extension.  Structured
results cross the boundary as canonical JSON artifacts (the same bytes the
CLI prints under ``--format data``); :func:`payload` unwraps them.
"""

import json

from _quiverhom import (  # noqa: F401
    Algebra,
    ArtifactError,
    DomainError,
    NotAdmissibleError,
    ParseError,
    algebra_dimension,
    artifact_type,
    decode_presentation,
)

ARTIFACT_FORMAT = "qh-artifact"
ARTIFACT_VERSION = 1

__all__ = [
    "Algebra",
    "ArtifactError",
    "DomainError",
    "NotAdmissibleError",
    "ParseError",
    "algebra_dimension",
    "artifact_type",
    "decode_presentation",
    "load",
    "from_text",
    "payload",
]


def load(path):
    """Parse a presentation file into an :class:`Algebra`."""
    return Algebra.from_file(str(path))


def from_text(text):
    """Parse presentation text into an :class:`Algebra`."""
    return Algebra.from_text(text)


def payload(artifact):
    """Unwrap a JSON artifact envelope and return its payload dict.

    Raises ``ValueError`` when the envelope is not a version-1 artifact.
    """
    env = json.loads(artifact)
    if not isinstance(env, dict) or env.get("format") != ARTIFACT_FORMAT:
        raise ValueError("not a qh-artifact envelope")
    if env.get("version") != ARTIFACT_VERSION:
        raise ValueError("unsupported artifact version: %r" % (env.get("version"),))
    return env["payload"]
