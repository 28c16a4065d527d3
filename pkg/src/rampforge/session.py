"""Replayable ramp state: model id, seed, and the accepted edit stack.

A state deterministically reconstructs its ramp from a model book, which lets
the CLI script an editing session from a JSON file and lets the HTTP service
stay stateless (the state travels with each request).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .colorspace import parse_hex, srgb_to_lab
from .curve import AffineEdit
from .errors import InvalidEditError, RampforgeError
from .generator import GeneratedRamp, apply_user_edit, seed_diverging, seed_sequential
from .modelbook import ModelBook

_EDIT_FIELDS = ("translate_l", "translate_a", "translate_b",
                "rotate_ab_degrees", "scale", "reflect")


def edit_to_dict(e: AffineEdit) -> dict:
    return {
        "translate_l": e.translate_l,
        "translate_a": e.translate_a,
        "translate_b": e.translate_b,
        "rotate_ab_degrees": e.rotate_ab_degrees,
        "scale": e.scale,
        "reflect": e.reflect,
    }


def edit_from_dict(d: dict) -> AffineEdit:
    if not isinstance(d, dict):
        raise RampforgeError("edit must be an object")
    unknown = set(d) - set(_EDIT_FIELDS)
    if unknown:
        raise RampforgeError(f"unknown edit fields: {sorted(unknown)}")
    try:
        return AffineEdit(
            translate_l=float(d.get("translate_l", 0.0)),
            translate_a=float(d.get("translate_a", 0.0)),
            translate_b=float(d.get("translate_b", 0.0)),
            rotate_ab_degrees=float(d.get("rotate_ab_degrees", 0.0)),
            scale=float(d.get("scale", 1.0)),
            reflect=bool(d.get("reflect", False)),
        )
    except (TypeError, ValueError) as err:
        raise RampforgeError(f"bad edit value: {err}") from None


@dataclass(frozen=True)
class RampState:
    model_id: str
    seed_hex: str
    kind: str = "sequential"
    n: int = 9
    arm_rotation: float = 0.0
    gamut_mode: str = "clip"
    edits: tuple[AffineEdit, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "model_id": self.model_id,
            "seed_hex": self.seed_hex,
            "kind": self.kind,
            "n": self.n,
            "arm_rotation": self.arm_rotation,
            "gamut_mode": self.gamut_mode,
            "edits": [edit_to_dict(e) for e in self.edits],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RampState":
        if not isinstance(d, dict):
            raise RampforgeError("ramp state must be an object")
        for key in ("model_id", "seed_hex"):
            if key not in d:
                raise RampforgeError(f"ramp state missing field {key!r}")
        kind = d.get("kind", "sequential")
        if kind not in ("sequential", "diverging"):
            raise RampforgeError(f"unknown ramp kind {kind!r}")
        gamut_mode = d.get("gamut_mode", "clip")
        if gamut_mode not in ("strict", "clip"):
            raise RampforgeError(f"unknown gamut mode {gamut_mode!r}")
        n = int(d.get("n", 9))
        if n < 2:
            raise RampforgeError(f"n must be >= 2, got {n}")
        return cls(
            model_id=str(d["model_id"]),
            seed_hex=str(d["seed_hex"]),
            kind=kind,
            n=n,
            arm_rotation=float(d.get("arm_rotation", 0.0)),
            gamut_mode=gamut_mode,
            edits=tuple(edit_from_dict(e) for e in d.get("edits", [])),
        )

    def build(self, book: ModelBook) -> GeneratedRamp:
        """Replay this state against a model book into its current ramp."""
        model = book.model(self.model_id)
        seed = srgb_to_lab(parse_hex(self.seed_hex))
        if self.kind == "diverging":
            ramp = seed_diverging(
                model, seed,
                arm_rotation_degrees=self.arm_rotation,
                join_angle_degrees=book.diverging_angle_degrees,
                rotation_limit_degrees=book.diverging_rotation_limit_degrees,
                gamut_mode=self.gamut_mode,
            )
        else:
            ramp = seed_sequential(model, seed, gamut_mode=self.gamut_mode)
        for i, edit in enumerate(self.edits):
            ramp = apply_user_edit(ramp, edit)
            if ramp.gamut_status == "reverted":
                raise InvalidEditError(
                    f"stored edit {i} drives the ramp out of gamut on replay")
        return ramp

    def with_edit(self, edit: AffineEdit) -> "RampState":
        return RampState(
            model_id=self.model_id, seed_hex=self.seed_hex, kind=self.kind,
            n=self.n, arm_rotation=self.arm_rotation, gamut_mode=self.gamut_mode,
            edits=self.edits + (edit,),
        )
