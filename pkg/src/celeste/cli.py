"""Command line front end: ``celeste <command> <scenario-file> [--verbose] [--check]``.

Exit status is 0 on success, 1 when a report contains a FAIL, and 2 on an
engine or input error, which is printed as ``error: <Name> (<message>)``.
"""

from __future__ import annotations

import argparse
import sys

from .celestial import (Report, additivity_check, check_change_of_variables,
                        fiber_strata, integrate, local_sum, manifestation_terms,
                        resolution_independence)
from .chow import equal, format_class, total_chern
from .errors import CelesteError, ValidationError
from .invariants import (ZetaFunction, candidate_poles, chern_numbers, csm_class,
                         stringy_chern, toric_csm, zeta_global)
from .models import (BoundaryAtom, ConstructibleSet, OrbitAtom,
                     SystemDivisor, resolve, restrict_to_point)
from .scalar import Scalar, format_scalar
from .scenario import COMMANDS, load_scenario


def _set_text(S):
    return ", ".join(sorted(str(a) for a in S.atoms))


def _divisor_text(D):
    if not D.terms:
        return "0"
    return " + ".join(f"({format_scalar(c)})*{a}"
                      for a, c in sorted(D.terms.items(), key=lambda t: str(t[0])))


def _class_block(out, title, a):
    out.append(title)
    body = format_class(a)
    out.extend(body.splitlines() if body else ["0"])
    out.append(f"degree: {format_scalar(a.degree())}")


def _need(value, field, command):
    if value is None:
        raise ValidationError(f"{command} needs the field '{field}'")
    return value


def _breakdown(out, rd):
    out.append("terms:")
    for cone, w in manifestation_terms(rd):
        rays = ",".join("(" + ",".join(map(str, r)) + ")" for r in cone)
        out.append(f"  I = {{{rays}}}  weight = {format_scalar(w)}")


def _strata(out, rd, p, S):
    fiber = restrict_to_point(rd.tower, S, p, rd.level)
    out.append("strata:")
    for s in fiber_strata(rd, p, fiber):
        names = []
        for a in s.atoms:
            if isinstance(a, tuple):
                names.append("(" + ",".join(map(str, a)) + ")")
            else:
                names.append(str(a))
        out.append(f"  {{{', '.join(names)}}}  chi = {s.euler}  weight = "
                   f"{format_scalar(s.weight)}  contribution = {format_scalar(s.contribution)}")


# -- commands ---------------------------------------------------------------

def cmd_integrate(sc, verbose, check, out):
    S = _need(sc.set, "set", "integrate")
    cc = integrate(sc.tower, sc.divisor, S)
    out.append(f"integral of {_divisor_text(sc.divisor)} over {_set_text(S)}")
    out.append(f"evaluated on level {cc.evaluation_level}")
    if verbose:
        _breakdown(out, cc.resolved)
    for k in range(cc.evaluation_level, -1, -1):
        _class_block(out, f"manifestation on level {k}:", cc[k])
    reports = []
    if check:
        reports.append(cc.verify_compatibility())
        reports.append(resolution_independence(sc.tower, sc.divisor, S))
    return reports


def cmd_cov_check(sc, verbose, check, out):
    S = _need(sc.set, "set", "cov-check")
    i, j = sc.levels if sc.levels is not None else (0, sc.tower.height)
    return [check_change_of_variables(sc.tower, sc.divisor, S, i, j)]


def _fractions(xs):
    return "{" + ", ".join(str(x) for x in sorted(xs)) + "}"


def _zeta_report(z, poles):
    rep = Report("candidate pole containment")
    found = {r for r, _ in z.poles}
    rep.add("poles within candidates", _fractions(found), _fractions(poles), found <= poles)
    return rep


def cmd_zeta_global(sc, verbose, check, out):
    z = zeta_global(sc.tower, sc.divisor)
    out.append(z.format())
    reports = []
    if check:
        at0 = z(0)
        chi = zeta_global(sc.tower, SystemDivisor()).value
        rep = Report("specialization at m = 0")
        rep.add("Z(0) = chi(X)", at0, chi, at0 == chi.constant_value())
        reports.append(rep)
    return reports


def cmd_zeta_local(sc, verbose, check, out):
    if len(sc.germs) != 1:
        raise ValidationError("zeta-local needs exactly one germ")
    germ = next(iter(sc.germs.values()))
    p = sc.point if sc.point is not None else sc.base.max_cones[0]
    D = SystemDivisor({germ: Scalar.m()})
    rd = resolve(sc.tower, D, ConstructibleSet.ambient())
    if verbose:
        _strata(out, rd, p, ConstructibleSet.ambient())
    z = ZetaFunction(local_sum(rd, p, ConstructibleSet.ambient()))
    out.append(z.format())
    return [_zeta_report(z, candidate_poles(sc.tower, germ))] if check else []


def cmd_local_value(sc, verbose, check, out):
    S = _need(sc.set, "set", "local-value")
    p = _need(sc.point, "point", "local-value")
    rd = resolve(sc.tower, sc.divisor, S)
    if verbose:
        _strata(out, rd, p, S)
    out.append(f"local value: {format_scalar(local_sum(rd, p, S))}")
    return []


def cmd_stringy(sc, verbose, check, out):
    st = stringy_chern(sc.tower)
    if verbose:
        _breakdown(out, st.celestial.resolved)
    _class_block(out, "stringy Chern class on the base:", st.base_class)
    out.append(f"stringy Euler number: {format_scalar(st.euler)}")
    reports = []
    if check:
        reports.append(st.celestial.verify_compatibility())
        if sc.base.is_smooth and sc.base.is_complete:
            rep = Report("smooth base")
            c = total_chern(sc.base)
            rep.add("stringy class = c(TX)", st.base_class, c, equal(st.base_class, c))
            reports.append(rep)
    return reports


def _strata_cones(S):
    if S.is_ambient:
        return None
    cones = []
    for a in S.atoms:
        if isinstance(a, BoundaryAtom):
            cones.append((a.ray,))
        elif isinstance(a, OrbitAtom):
            cones.append(a.cone)
        else:
            raise ValidationError(f"csm strata must be rays or cones, not {a}")
    return cones


def cmd_csm(sc, verbose, check, out):
    model = sc.tower.top
    S = sc.set if sc.set is not None else ConstructibleSet.ambient()
    c = csm_class(model, _strata_cones(S))
    _class_block(out, f"csm class of {_set_text(S)}:", c)
    reports = []
    if check and S.is_ambient:
        rep = Report("toric csm identity")
        rep.add("csm = sum of all orbit closures", c, toric_csm(model),
                equal(c, toric_csm(model)))
        reports.append(rep)
    return reports


def cmd_chern_numbers(sc, verbose, check, out):
    model = sc.tower.top
    nums = chern_numbers(model)
    n = model.rank
    for i, v in enumerate(nums):
        out.append(f"c1^{i}.c{n - i} = {format_scalar(v)}")
    reports = []
    if check:
        rep = Report("top Chern number")
        rep.add("c_n = number of maximal cones", nums[0], len(model.max_cones),
                nums[0] == len(model.max_cones))
        reports.append(rep)
    return reports


def cmd_additivity(sc, verbose, check, out):
    if len(sc.sets) != 2:
        raise ValidationError("additivity-check needs 'sets' with two entries")
    return [additivity_check(sc.tower, sc.divisor, *sc.sets)]


HANDLERS = {
    "integrate": cmd_integrate,
    "cov-check": cmd_cov_check,
    "zeta-global": cmd_zeta_global,
    "zeta-local": cmd_zeta_local,
    "stringy": cmd_stringy,
    "csm": cmd_csm,
    "chern-numbers": cmd_chern_numbers,
    "additivity-check": cmd_additivity,
    "local-value": cmd_local_value,
}
assert set(HANDLERS) == set(COMMANDS)


def run(command, path, verbose=False, check=False):
    """Run one scenario; returns ``(exit_status, text)``."""
    out = []
    try:
        sc = load_scenario(path)
        if command == "run":
            command = _need(sc.command, "command", "run")
        if sc.name:
            out.append(f"scenario: {sc.name}")
        out.append(f"command: {command}")
        reports = HANDLERS[command](sc, verbose, check, out)
    except CelesteError as exc:
        out.append(f"error: {exc.name} ({exc})")
        return 2, "\n".join(out) + "\n"
    except OSError as exc:
        out.append(f"error: IOError ({exc})")
        return 2, "\n".join(out) + "\n"
    status = 0
    for rep in reports:
        out.append(rep.format())
        if not rep.passed:
            status = 1
    return status, "\n".join(out) + "\n"


def main(argv=None):
    parser = argparse.ArgumentParser(prog="celeste", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS + ("run",))
    parser.add_argument("scenario")
    parser.add_argument("--verbose", action="store_true",
                        help="print the term or stratum breakdown of the sum")
    parser.add_argument("--check", action="store_true",
                        help="re-verify invariants after computing")
    args = parser.parse_args(argv)
    status, text = run(args.command, args.scenario, args.verbose, args.check)
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
