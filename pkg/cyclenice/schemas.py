"""
Pydantic models for certificates, witnesses, verdicts and reports.
"""
from enum import Enum
from typing import Annotated, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class BaseKind(str, Enum):
    """Fixed small graphs the recognizer and generator know by name."""
    EVEN_CYCLE = "EvenCycle"
    DIAMOND = "Diamond"
    K4 = "K4"
    C6BAR = "C6bar"
    W5 = "W5"
    K2 = "K2"
    OTHER = "Other"


# Bases a construction sequence may start from.
FAMILY_KINDS = (BaseKind.EVEN_CYCLE, BaseKind.DIAMOND, BaseKind.K4, BaseKind.C6BAR)


class BaseTag(BaseModel):
    """Base-graph tag; only EvenCycle carries a parameter."""
    model_config = ConfigDict(frozen=True)

    kind: BaseKind
    length: Optional[int] = Field(None, description="Cycle length, EvenCycle only", ge=2)

    @model_validator(mode="after")
    def _check_length(self) -> "BaseTag":
        if self.kind == BaseKind.EVEN_CYCLE:
            if self.length is None or self.length % 2:
                raise ValueError("EvenCycle needs an even length >= 2")
        elif self.length is not None:
            raise ValueError(f"{self.kind.value} takes no length")
        return self

    @classmethod
    def even_cycle(cls, length: int) -> "BaseTag":
        return cls(kind=BaseKind.EVEN_CYCLE, length=length)

    @classmethod
    def of(cls, kind: BaseKind) -> "BaseTag":
        return cls(kind=kind)

    @property
    def name(self) -> str:
        if self.kind == BaseKind.EVEN_CYCLE:
            return f"EvenCycle({self.length})"
        return self.kind.value


class CycleSpec(BaseModel):
    """A cycle as parallel cyclic sequences of vertices and edges.

    ``edge_ids[i]`` joins ``vertices[i]`` and ``vertices[(i + 1) % len]``.
    """
    model_config = ConfigDict(frozen=True)

    vertices: List[int] = Field(..., description="Cyclic vertex sequence", min_length=2)
    edge_ids: List[int] = Field(..., description="Cyclic edge sequence", min_length=2)

    @model_validator(mode="after")
    def _check_shape(self) -> "CycleSpec":
        if len(self.vertices) != len(self.edge_ids):
            raise ValueError("vertices and edge_ids must have the same length")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("cycle vertices must be distinct")
        if len(set(self.edge_ids)) != len(self.edge_ids):
            raise ValueError("cycle edges must be distinct")
        return self

    @property
    def length(self) -> int:
        return len(self.edge_ids)

    @property
    def is_even(self) -> bool:
        return self.length % 2 == 0


class OracleVerdict(BaseModel):
    """Outcome of the brute-force cycle-nice oracle."""
    kind: Literal["CycleNice", "Witness", "NotMatchable"]
    witness: Optional[CycleSpec] = Field(None, description="First even cycle that is not nice")

    @model_validator(mode="after")
    def _check_witness(self) -> "OracleVerdict":
        if (self.kind == "Witness") != (self.witness is not None):
            raise ValueError("a witness is present exactly for the Witness outcome")
        return self

    @classmethod
    def cycle_nice(cls) -> "OracleVerdict":
        return cls(kind="CycleNice")

    @classmethod
    def not_matchable(cls) -> "OracleVerdict":
        return cls(kind="NotMatchable")

    @classmethod
    def with_witness(cls, cycle: CycleSpec) -> "OracleVerdict":
        return cls(kind="Witness", witness=cycle)


class Ear(BaseModel):
    """An odd path attached to everything before it in a decomposition."""
    vertices: List[int] = Field(..., min_length=2)
    edge_ids: List[int] = Field(..., min_length=1)

    @property
    def length(self) -> int:
        return len(self.edge_ids)


class EarDecomposition(BaseModel):
    initial_vertices: List[int]
    initial_edge_ids: List[int]
    ears: List[Ear]


class EvenSubdivision(BaseModel):
    kind: Literal["EvenSubdivision"] = "EvenSubdivision"
    edge: int = Field(..., ge=0)
    path_len: int = Field(..., description="Odd length of the replacing path", ge=3)

    @field_validator("path_len")
    @classmethod
    def _odd(cls, value: int) -> int:
        if value % 2 == 0:
            raise ValueError("path_len must be odd")
        return value


class OddLExpansion(BaseModel):
    kind: Literal["OddLExpansion"] = "OddLExpansion"
    vertex: int = Field(..., ge=0)
    side_a: List[int] = Field(..., description="Incident edge ids kept by v'", min_length=1)
    side_b: List[int] = Field(..., description="Incident edge ids moved to v''", min_length=1)
    path_len: int = Field(..., description="Even length of the path joining v' and v''", ge=2)

    @field_validator("path_len")
    @classmethod
    def _even(cls, value: int) -> int:
        if value % 2:
            raise ValueError("path_len must be even")
        return value


class OddAExpansion(OddLExpansion):
    kind: Literal["OddAExpansion"] = "OddAExpansion"  # type: ignore[assignment]
    bridge_mult: int = Field(1, description="Number of edges joining v' and v''", ge=1)


class MultiEdgeReplace(BaseModel):
    kind: Literal["MultiEdgeReplace"] = "MultiEdgeReplace"
    edge: int = Field(..., ge=0)
    multiplicity: int = Field(..., description="Absolute size of the edge's parallel class", ge=2)


ConstructionStep = Annotated[
    Union[EvenSubdivision, OddLExpansion, OddAExpansion, MultiEdgeReplace],
    Field(discriminator="kind"),
]


class ConstructionSequence(BaseModel):
    """Certificate: a base graph and the steps that build the target from it."""
    base: BaseTag
    steps: List[ConstructionStep] = Field(default_factory=list)

    @field_validator("base")
    @classmethod
    def _family_base(cls, value: BaseTag) -> BaseTag:
        if value.kind not in FAMILY_KINDS:
            raise ValueError(f"{value.name} is not a construction base")
        return value


class VerdictReason(str, Enum):
    NOT_MATCHABLE = "NotMatchable"
    NOT_CLAW_FREE = "NotClawFree"
    NOT_PLANAR = "NotPlanar"
    NOT_2_CONNECTED = "Not2Connected"
    HAS_LOOPS = "HasLoops"


class Verdict(BaseModel):
    """Recognizer output."""
    kind: Literal["Accept", "AcceptOracle", "Reject", "OutOfScope"]
    certificate: Optional[ConstructionSequence] = None
    note: Optional[str] = None
    witness: Optional[CycleSpec] = None
    reason: Optional[VerdictReason] = None

    @classmethod
    def accept(cls, certificate: ConstructionSequence) -> "Verdict":
        return cls(kind="Accept", certificate=certificate)

    @classmethod
    def accept_oracle(cls, note: str) -> "Verdict":
        return cls(kind="AcceptOracle", note=note)

    @classmethod
    def reject(cls, witness: CycleSpec) -> "Verdict":
        return cls(kind="Reject", witness=witness)

    @classmethod
    def not_matchable(cls) -> "Verdict":
        return cls(kind="Reject", reason=VerdictReason.NOT_MATCHABLE)

    @classmethod
    def out_of_scope(cls, reason: VerdictReason) -> "Verdict":
        return cls(kind="OutOfScope", reason=reason)

    @property
    def is_cycle_nice(self) -> Optional[bool]:
        """True/False for a decision, None when the input is out of scope."""
        if self.kind == "OutOfScope":
            return None
        return self.kind in ("Accept", "AcceptOracle")


class GenConfig(BaseModel):
    """Parameters of one random construction."""
    base: Union[BaseTag, Literal["Random"]] = "Random"
    n_ops: int = Field(0, ge=0)
    seed: int = Field(0, ge=0, le=2**64 - 1)
    max_path_len: int = Field(5, description="Longest path an operation may insert", ge=3)
    require_claw_free_planar: bool = False
    op_weights: Tuple[float, float, float] = Field(
        (1.0, 1.0, 1.0),
        description="Relative weights of even subdivision, odd L-expansion, multiedge replacement",
    )

    @model_validator(mode="after")
    def _check(self) -> "GenConfig":
        if any(w < 0 for w in self.op_weights):
            raise ValueError("op_weights must be nonnegative")
        if self.n_ops > 0 and not any(self.op_weights):
            raise ValueError("op_weights cannot all be zero when n_ops > 0")
        if isinstance(self.base, BaseTag) and self.base.kind not in FAMILY_KINDS:
            raise ValueError(f"{self.base.name} is not a construction base")
        return self


class GraphProperties(BaseModel):
    """Structural summary printed by ``props``."""
    vertex_count: int = Field(..., ge=0)
    edge_count: int = Field(..., ge=0)
    claw_free: bool
    planar: bool
    connected: bool
    two_connected: bool
    three_connected: bool
    perfect_matching: bool
    matching_covered: bool
    base: str = Field(..., description="Name of the matching base graph, or Other")


class AtlasOrderStats(BaseModel):
    order: int = Field(..., ge=1)
    enumerated: int = Field(..., description="Simple graphs up to isomorphism", ge=0)
    connected: int = Field(..., ge=0)
    in_scope: int = Field(..., description="3-connected, claw-free and planar", ge=0)
    cycle_nice: int = Field(..., ge=0)


class AtlasEntry(BaseModel):
    order: int
    graph6: str
    base: str


class AtlasReport(BaseModel):
    max_n: int
    orders: List[AtlasOrderStats]
    cycle_nice: List[AtlasEntry]
