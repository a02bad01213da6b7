"""JSON instance documents and cycle notation accepted by the command line."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .core import MultiPartitionInstance, Partition, Permutation, sigma_rho, validate_instance, validate_partition
from .errors import NotAPermutation, ParseError, TabloidError, ValidationError


@dataclass(frozen=True)
class InstanceDocument:
    instance: MultiPartitionInstance
    sigma: Permutation | None = None
    rho: Partition | None = None
    j: int | None = None
    k: int | None = None

    def permutation(self) -> Permutation:
        """sigma, or sigma_rho when rho was given instead."""
        if (self.sigma is None) == (self.rho is None):
            raise ValidationError("exactly one of sigma and rho is required", "sigma")
        if self.sigma is not None:
            return self.sigma
        return sigma_rho(self.rho)

    def require(self, name: str) -> int:
        value = getattr(self, name)
        if value is None:
            raise ValidationError("required for this command", name)
        return value

    def canonical(self) -> dict:
        out = self.instance.describe()
        if self.sigma is not None:
            out["sigma"] = [list(c) for c in self.sigma.cycles(include_fixed=False)]
        if self.rho is not None:
            out["rho"] = list(self.rho.parts)
        for key in ("j", "k"):
            if getattr(self, key) is not None:
                out[key] = getattr(self, key)
        return out


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    """Cycle notation such as "(1,2,3,4)(5,6)", "(1 2)(3 4)", "(1234)(56)"
    (single-digit labels only) or a JSON list of cycles.  "()" and "[]" are
    the identity."""
    text = text.strip()
    if text.startswith("["):
        try:
            cycles = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc), "sigma") from None
        return _check_cycle_list(cycles)
    if _CYCLE.sub("", text).strip():
        raise ParseError(f"cannot read cycle notation {text!r}", "sigma")
    cycles = []
    for body in _CYCLE.findall(text):
        body = body.strip()
        if not body:
            continue
        if re.fullmatch(r"\d+", body):
            cycles.append([int(ch) for ch in body])
        else:
            try:
                cycles.append([int(tok) for tok in re.split(r"[,\s]+", body) if tok])
            except ValueError:
                raise ParseError(f"bad cycle ({body})", "sigma") from None
    return cycles


def _check_cycle_list(cycles) -> list[list[int]]:
    if not isinstance(cycles, list) or not all(
            isinstance(c, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in c) for c in cycles):
        raise ParseError("sigma must be a list of cycles of integers", "sigma")
    return cycles


def _int_list(value, path) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ParseError("expected a list of integers", path)
    return value


def _optional_int(obj, key):
    value = obj.get(key)
    if value is None:
        return None
    if not isinstance(value, int) or isinstance(value, bool):
        raise ParseError("expected an integer", key)
    return value


def document_from_obj(obj) -> InstanceDocument:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object")
    if "mu" not in obj or "l" not in obj:
        raise ParseError("missing required fields 'mu' and 'l'")
    mu = obj["mu"]
    if not isinstance(mu, list):
        raise ParseError("expected a list of partitions", "mu")
    components = [_int_list(c, f"mu[{h}]") for h, c in enumerate(mu)]
    periods = _int_list(obj["l"], "l")
    try:
        inst = validate_instance(components, periods)
    except TabloidError as exc:
        raise ValidationError(str(exc), "mu", cause=exc) from exc

    sigma = rho = None
    if obj.get("sigma") is not None and obj.get("rho") is not None:
        raise ValidationError("give sigma or rho, not both", "sigma")
    if obj.get("sigma") is not None:
        raw = obj["sigma"]
        cycles = parse_cycles(raw) if isinstance(raw, str) else _check_cycle_list(raw)
        try:
            sigma = Permutation.from_cycles(cycles, inst.m)
        except NotAPermutation as exc:
            raise ValidationError(str(exc), "sigma", cause=exc) from exc
    if obj.get("rho") is not None:
        try:
            rho = validate_partition(_int_list(obj["rho"], "rho"))
        except TabloidError as exc:
            raise ValidationError(str(exc), "rho", cause=exc) from exc
        if rho.m != inst.m:
            raise ValidationError(f"rho is a partition of {rho.m}, the instance has m={inst.m}", "rho")
    k = _optional_int(obj, "k")
    if k is not None and not 0 <= k < inst.l:
        raise ValidationError(f"k must lie in 0..{inst.l - 1}", "k")
    return InstanceDocument(inst, sigma, rho, _optional_int(obj, "j"), k)


def parse_instance(text: str) -> InstanceDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return document_from_obj(obj)
