"""Deterministic verification command line.

Subcommands: identities | derive | residual | polarization | spin2.
Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage or
configuration error.  Identical configurations produce byte-identical
reports.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import bw, proca, spin2 as spin2_mod
from .clifford import build_gamma_basis, check_reflection_properties, check_symmetric_basis
from .exact import (
    ExactScalar,
    OnShellMomentum,
    format_scalar,
    mass_shell_energy,
    momentum_sample,
    pythagorean_momenta,
    set_tolerance,
)
from .exceptions import MasslessSingular, NotExactlyOnShell
from .polarization import (
    Helicity,
    Normalization,
    TRANSVERSE,
    ast_potential,
    cross_product_diagnostics,
    default_mass_sequence,
    massless_limit_scan,
    pairing_table,
    strengths_closed_form,
    strengths_from_u,
    u_vector,
)
from .report import Report
from .tensors import is_zero, max_magnitude

DEFAULT_SAMPLE = 12
DEFAULT_SEED = 2024
SWEEP_COUNT = 100

EQ_STRENGTH = (
    "c_a m (d_mu A_nu - d_nu A_mu) + c_f (d_mu F_nu - d_nu F_mu)"
    " = i c_A m^2 eps_{a b mu nu} A^{a b} + 2 m c_F F_{mu nu}"
)
EQ_MOTION = (
    "c_a m^2 A_mu + c_f m F_mu"
    " = i c_A m eps_{mu nu a b} d^nu A^{a b} + 2 c_F d^nu F_{mu nu}"
)
EQ_CONSTRAINT_SCALAR = "m c_a d^mu A_mu + c_f d^mu F_mu = 0"
EQ_CONSTRAINT_VECTOR = (
    "m c_A d^a A_{a mu} + (i/2) c_F eps_{a b nu mu} d^a F^{b nu} = 0"
)
EQ_TWO_MASS = (
    "2 c1 d_mu F~^{mu a} - 2 i c2 d_mu A^{mu a} + m2 Psi^a = 0 ;"
    " 2 c1 d_mu F^{mu a} + 2 i c2 d_mu A~^{mu a} + m1 Psi^a = 0 ;"
    " 2 c1 (m1 F + i m2 F~) + 2 c2 (m2 A + i m1 A~) = d^mu Psi^nu - d^nu Psi^mu ;"
    " d_mu Psi^mu = 0"
)
EQ_SECOND_ORDER = (
    "(1/m^2) [d_nu d^mu G_k^{nu} - d_nu d^nu G_k^{mu}] = G_k^{mu}"
)
EQ_CONTRACTION = "d_mu G^{mu}_{k} = F_k ; (1/m^2) d_k F^k = 0"


class ConfigError(Exception):
    pass


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {text!r} ({exc})")


def _parse_rational_list(text: str, count: int, what: str) -> tuple[Fraction, ...]:
    parts = [part.strip() for part in str(text).split(",")]
    if len(parts) != count:
        raise ConfigError(f"{what} needs {count} comma-separated rationals, got {text!r}")
    return tuple(_parse_rational(part) for part in parts)


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="notoph",
        description="Exact verification suite for the coupled photon/notoph "
        "spin-1 and spin-2 field-equation systems.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p_cmd):
        p_cmd.add_argument("--mode", choices=("exact", "approx"), default=None)
        p_cmd.add_argument("--tolerance", type=float, default=None)
        p_cmd.add_argument("--bound", type=int, default=None,
                           help="use every Pythagorean momentum up to this bound")
        p_cmd.add_argument("--momentum", action="append", default=None,
                           metavar="P1,P2,P3,M", help="explicit momentum (repeatable)")
        p_cmd.add_argument("--norm", default=None, metavar="m|1|RATIONAL")
        p_cmd.add_argument("--epsilon-sign", choices=("+", "-"), default=None)
        p_cmd.add_argument("--format", choices=("text", "json"), default=None)
        p_cmd.add_argument("--out", default=None, metavar="PATH")
        p_cmd.add_argument("--config", default=None, metavar="PATH",
                           help="JSON config file; flags override its entries")
        p_cmd.add_argument("--seed", type=int, default=None)

    p_identities = sub.add_parser("identities", help="reflection-operator and symmetric-basis identity suite")
    common(p_identities)

    p_derive = sub.add_parser("derive", help="machine-derive the field equations and diff against the printed system")
    common(p_derive)
    p_derive.add_argument("--system", choices=("spin1", "spin1-twomass"), default=None)
    p_derive.add_argument("--classical", action="store_true", default=None,
                          help="use the coefficients of the classical reduction")
    p_derive.add_argument("--couplings", default=None,
                          help="spin1: vector potential, vector strength, tensor potential,"
                               " tensor strength; twomass: strength, potential")
    p_derive.add_argument("--masses", default=None, metavar="M1,M2",
                          help="two-mass pair; M1 defaults to each momentum's mass")

    p_residual = sub.add_parser("residual", help="residual checks on constructed solution families and probes")
    common(p_residual)
    p_residual.add_argument("--couplings", default=None,
                            help="coefficients used for the proportionality probe")

    p_polarization = sub.add_parser("polarization", help="polarization tables, strengths, and massless scans")
    common(p_polarization)
    p_polarization.add_argument("--scan-massless", action="store_true", default=None)

    p_spin2 = sub.add_parser("spin2", help="spin-2 residuals, equivalence sweep, and contraction identity")
    common(p_spin2)
    p_spin2.add_argument("--g-from", default=None, metavar="PATH",
                         help="JSON tensor file with a symmetric rank-2 field")
    return parser


_CONFIG_KEYS = {
    "mode", "tolerance", "bound", "momentum", "norm", "epsilon_sign", "format",
    "out", "seed", "system", "classical", "couplings", "masses",
    "scan_massless", "g_from",
}


def _merge_config(args: argparse.Namespace) -> dict:
    merged: dict = {}
    if args.config is not None:
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        try:
            loaded = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}")
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a JSON object")
        for key in loaded:
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"unknown config key {key!r}")
        merged.update(loaded)
    for key in _CONFIG_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    merged.setdefault("mode", "exact")
    merged.setdefault("format", "text")
    merged.setdefault("seed", DEFAULT_SEED)
    if merged.get("epsilon_sign") not in (None, "+", "-"):
        raise ConfigError("epsilon_sign must be '+' or '-'")
    merged.setdefault("epsilon_sign", "+")
    if merged["mode"] not in ("exact", "approx"):
        raise ConfigError("mode must be 'exact' or 'approx'")
    if merged["format"] not in ("text", "json"):
        raise ConfigError("format must be 'text' or 'json'")
    return merged


def _resolve_momenta(config: dict, min_mass: int = 1) -> list[OnShellMomentum]:
    exact = config["mode"] == "exact"
    explicit = config.get("momentum")
    if explicit:
        momenta = []
        for item in explicit:
            parts = _parse_rational_list(item, 4, "momentum")
            try:
                momenta.append(mass_shell_energy(parts[:3], parts[3], exact=exact))
            except NotExactlyOnShell as exc:
                raise ConfigError(
                    f"momentum {item!r} is not exactly on shell ({exc}); "
                    "use a Pythagorean quadruple or --mode approx"
                )
        return momenta
    bound = config.get("bound")
    if bound is not None:
        if bound < 1:
            raise ConfigError("bound must be >= 1")
        momenta = [q for q in pythagorean_momenta(bound) if q.m >= min_mass]
    else:
        momenta = momentum_sample(DEFAULT_SAMPLE, min_mass=min_mass)
    if not momenta:
        raise ConfigError("momentum list is empty")
    if not exact:
        momenta = [
            mass_shell_energy([float(c) for c in q.spatial], float(q.m), exact=False)
            for q in momenta
        ]
    return momenta


def _resolve_normalization(config: dict) -> Normalization:
    raw = config.get("norm", "m")
    if raw in ("m", "mass"):
        return Normalization.mass()
    if raw in ("1", "unit"):
        return Normalization.unit()
    try:
        return Normalization.custom(_parse_rational(str(raw)))
    except ValueError as exc:
        raise ConfigError(str(exc))


def _basis_from(config: dict):
    return build_gamma_basis(1 if config["epsilon_sign"] == "+" else -1)


def _config_echo(config: dict) -> dict:
    echo = {}
    for key in sorted(config):
        value = config[key]
        echo[key] = value if isinstance(value, (str, int, float, bool, list)) else str(value)
    return echo


def _single_mass_couplings(config: dict, mass) -> bw.SingleMassCouplings:
    raw = config.get("couplings")
    if config.get("classical") or raw is None:
        return bw.SingleMassCouplings.classical(mass)
    c = _parse_rational_list(raw, 4, "spin1 couplings")
    return bw.SingleMassCouplings(c[0], c[1], c[2], c[3], Fraction(mass))


def _two_mass_couplings(config: dict, momentum_mass) -> bw.TwoMassCouplings:
    raw = config.get("couplings")
    if raw is None:
        c1, c2 = Fraction(1, 2), Fraction(0)
    else:
        c1, c2 = _parse_rational_list(raw, 2, "two-mass couplings")
    masses = config.get("masses")
    if masses is None:
        m1, m2 = Fraction(momentum_mass), Fraction(0)
    else:
        m1, m2 = _parse_rational_list(masses, 2, "masses")
    return bw.TwoMassCouplings(c1, c2, m1, m2)


def cmd_identities(config: dict) -> Report:
    report = Report("identities", _config_echo(config))
    basis = _basis_from(config)
    for check in check_reflection_properties(basis):
        report.add(f"reflection.{check.name}", check.equation, check.passed)
    symmetric = check_symmetric_basis(basis)
    for check in symmetric.symmetric:
        report.add(f"symmetric_basis.{check.name}", check.equation, check.passed)
    return report


def cmd_derive(config: dict) -> Report:
    report = Report("derive", _config_echo(config))
    system = config.get("system", "spin1")
    momenta = _resolve_momenta(config)
    basis = _basis_from(config)
    anchor = EQ_TWO_MASS if system == "spin1-twomass" else (
        EQ_STRENGTH + " ; " + EQ_MOTION + " ; " + EQ_CONSTRAINT_SCALAR + " ; " + EQ_CONSTRAINT_VECTOR
    )
    for p in momenta:
        if system == "spin1-twomass":
            couplings = _two_mass_couplings(config, p.m)
        else:
            couplings = _single_mass_couplings(config, p.m)
        derived = bw.derive_system(couplings, p, basis)
        transcribed = proca.transcribed_system(couplings, p, basis)
        diff = bw.diff_systems(derived, transcribed)
        data = {
            "verdict": diff.verdict,
            "scales": {group: scale for group, scale in diff.scales},
        }
        mismatched = sorted(
            {col for entry in diff.entries for col in entry.mismatched_columns}
        )
        if mismatched:
            data["mismatched_columns"] = mismatched
        report.add(f"derive.match.{p.label()}", anchor, diff.passed(), **data)
        report.info(
            f"derive.dimensions.{p.label()}",
            anchor,
            equations=len(derived.equations),
            rank=derived.rank(),
            columns=len(derived.column_labels),
        )
    return report


def cmd_residual(config: dict) -> Report:
    report = Report("residual", _config_echo(config))
    momenta = _resolve_momenta(config)
    basis = _basis_from(config)
    report.info(
        "residual.assumption.lowercase_vector_field",
        EQ_CONSTRAINT_SCALAR,
        note=proca.F_EQUALS_LOWERCASE_F,
    )
    rng = random.Random(config["seed"])
    for p in momenta:
        classical = bw.SingleMassCouplings.classical(p.m)
        for h in TRANSVERSE:
            fields = proca.classical_solution(p, h, basis)
            bundle = proca.generalized_residuals(fields, p, classical, basis)
            report.add(
                f"residual.family.h={h.value}.{p.label()}",
                EQ_STRENGTH + " ; " + EQ_MOTION,
                bundle.is_zero(),
                max_residual=bundle.max_magnitude(),
            )
        time_fields = proca.classical_solution(p, Helicity.TIME, basis)
        time_bundle = proca.generalized_residuals(time_fields, p, classical, basis)
        motion = time_bundle["motion"]
        report.add(
            f"residual.scalar_mode_obstruction.{p.label()}",
            "A ~ p leaves the m^2 p_mu term of the equation of motion",
            not is_zero(motion),
            motion_residual=[format_scalar(x) for x in motion],
        )
        two_mass = _two_mass_couplings({"couplings": None, "masses": None}, p.m)
        for h in TRANSVERSE:
            sol = proca.two_mass_solution(p, h, two_mass, basis)
            bundle = proca.two_mass_residuals(sol, p, two_mass, basis)
            report.add(
                f"residual.two_mass_family.h={h.value}.{p.label()}",
                EQ_TWO_MASS,
                bundle.is_zero(),
                max_residual=bundle.max_magnitude(),
            )
        probe_fields = bw.Spin1Fields.zeros(p.exact).replace(vector_field=p.lower)
        probe_bundle = proca.two_mass_residuals(probe_fields, p, two_mass, basis)
        divergence = probe_bundle["vector_divergence"]
        expected = -(ExactScalar(0, 1) * ExactScalar(Fraction(p.m) ** 2)) if p.exact else None
        report.add(
            f"residual.divergence_probe.{p.label()}",
            "Psi = p gives d_mu Psi^mu = -i m1^2",
            (divergence == expected) if p.exact else not is_zero(divergence),
            value=format_scalar(divergence),
        )
        probe_couplings = _single_mass_couplings(config, p.m)
        if probe_couplings.tensor_strength == 0 or probe_couplings.tensor_potential == 0:
            # the probe is informative only with both tensor terms switched on
            probe_couplings = bw.SingleMassCouplings(
                Fraction(1), Fraction(2, 3), Fraction(3, 5), Fraction(1, 2), Fraction(p.m)
            )
        tensor = _random_antisymmetric(rng, p.exact)
        probe = proca.proportionality_probe(tensor, p, probe_couplings, basis)
        report.info(
            f"residual.proportionality_probe.{p.label()}",
            "F_{mu nu} = i m kappa (dual A)_{mu nu} in " + EQ_CONSTRAINT_VECTOR,
            kappa=probe.kappa,
            exact_zero=probe.exact_zero,
        )
    return report


def _random_antisymmetric(rng: random.Random, exact: bool):
    from .exact import imaginary_unit, make_scalar

    entries = [[None] * 4 for _ in range(4)]
    zero = make_scalar(0, exact)
    i = imaginary_unit(exact)
    for a in range(4):
        entries[a][a] = zero
        for b in range(a + 1, 4):
            value = make_scalar(Fraction(rng.randint(-5, 5), rng.randint(1, 3)), exact)
            value = value + i * make_scalar(Fraction(rng.randint(-5, 5), rng.randint(1, 3)), exact)
            entries[a][b] = value
            entries[b][a] = -value
    return tuple(tuple(row) for row in entries)


def cmd_polarization(config: dict) -> Report:
    report = Report("polarization", _config_echo(config))
    momenta = _resolve_momenta(config)
    basis = _basis_from(config)
    norm = _resolve_normalization(config)
    for p in momenta:
        if p.m == 0 and norm.kind != "mass":
            raise ConfigError(f"{p.label()} needs norm m for the massless evaluation")
        for h in Helicity:
            u = u_vector(p, h, norm)
            label = f"{p.label()}.h={h.value}"
            report.info(
                f"polarization.u.{label}",
                "u^mu(p, h) column vector",
                components=[format_scalar(c) for c in u.components],
                sqrt2_power=u.sqrt2_power,
            )
            pu = u.dot_momentum()
            if h is Helicity.TIME:
                expected = norm.over_mass(p) * p.mass_scalar * p.mass_scalar
                passed = pu == expected
                equation = "p_mu u^mu(p, 0_t) = N m"
            else:
                passed = not pu
                equation = "p_mu u^mu(p, h) = 0"
            report.add(f"polarization.transversality.{label}", equation, passed,
                       value=format_scalar(pu))
        grid = ast_potential(p, norm)
        report.add(
            f"polarization.ast_antisymmetry.{p.label()}",
            "A^{mu nu} = -A^{nu mu}",
            all(not (grid[a][b] + grid[b][a]) for a in range(4) for b in range(4)),
            entries=[[format_scalar(grid[a][b]) for b in range(4)] for a in range(4)],
        )
        if p.m != 0:
            for h in TRANSVERSE:
                closed = strengths_closed_form(p, h, norm)
                generated = strengths_from_u(p, h, norm)
                report.add(
                    f"polarization.strengths.h={h.value}.{p.label()}",
                    "B = (i/2m) p x u ; E = (i/2m)(p0 u - p u^0) equals the closed form",
                    closed == generated,
                    b=[format_scalar(c) for c in generated.b],
                    e=[format_scalar(c) for c in generated.e],
                )
            table = pairing_table(p, norm)
            report.info(
                f"polarization.pairing_table.{p.label()}",
                "g^{mu nu} u_mu(h) conj(u_nu(h'))",
                table={
                    f"{h.value},{hp.value}": format_scalar(value)
                    for (h, hp), (value, power) in sorted(
                        table.items(), key=lambda kv: (kv[0][0].value, kv[0][1].value)
                    )
                    if power == 0
                },
            )
            diagnostics = cross_product_diagnostics(p, norm)
            report.info(
                f"polarization.cross_products.{p.label()}",
                "X(h) x conj(X(h')) split along the spatial momentum",
                parallel_fractions={
                    f"{rec.family}:{rec.left.value},{rec.right.value}": rec.parallel_fraction
                    for rec in diagnostics
                },
            )
    if config.get("scan_massless"):
        _scan_records(report, norm)
    return report


def _scan_records(report: Report, norm: Normalization, spatial=(0, 0, 3)) -> None:
    sequence = default_mass_sequence()
    targets = [("u", h) for h in Helicity] + [("ast", None)]
    for quantity, h in targets:
        scan = massless_limit_scan(spatial, h, norm, sequence, quantity=quantity)
        for comp in scan.components:
            name = f"scan.{quantity}.h={h.value if h else '-'}.{comp.label}"
            data = {
                "classification": comp.classification,
                "slope": comp.slope,
                "order": comp.divergence_order,
                "limit": comp.limit_magnitude,
                "exact_massless": comp.exact_massless,
            }
            if norm.kind == "mass":
                report.add(name, "finite massless limit for N = m", comp.classification == "convergent", **data)
            else:
                ok = comp.classification == "convergent" or (
                    comp.divergence_order == 1
                    and comp.slope is not None
                    and abs(comp.slope + 1.0) <= 0.01
                )
                report.add(name, "gauge components diverge as 1/m for N = 1", ok, **data)


def cmd_spin2(config: dict) -> Report:
    report = Report("spin2", _config_echo(config))
    momenta = _resolve_momenta(config)
    basis = _basis_from(config)
    rng = random.Random(config["seed"])
    g_file = config.get("g_from")
    supplied = _load_rank2_file(Path(g_file)) if g_file else None
    for p in momenta:
        agreements = 0
        for _ in range(SWEEP_COUNT):
            g = spin2_mod.random_symmetric_tensor(rng, exact=p.exact)
            res_zero, transverse = spin2_mod.transversality_equivalence(g, p, p.m)
            if res_zero == transverse:
                agreements += 1
        report.add(
            f"spin2.equivalence_sweep.{p.label()}",
            EQ_SECOND_ORDER + " vanishes iff p_nu G_k^{nu} = 0 (on shell)",
            agreements == SWEEP_COUNT,
            agreements=agreements,
            sample=SWEEP_COUNT,
        )
        g = spin2_mod.random_symmetric_tensor(rng, exact=p.exact)
        trace13 = _metric_trace(spin2_mod.residual_second_order(g, p, p.m))
        _, scalar = spin2_mod.contract_to_vector(g, p, p.m)
        report.add(
            f"spin2.contraction_identity.{p.label()}",
            "tracing " + EQ_SECOND_ORDER + " reproduces " + EQ_CONTRACTION,
            trace13 == scalar,
            trace=format_scalar(trace13),
            pair_scalar=format_scalar(scalar),
        )
        coeffs = spin2_mod.Spin2Coefficients(
            alpha2=Fraction(0), alpha3=Fraction(0),
            beta2=Fraction(0), beta3=Fraction(0), beta4=Fraction(0), beta5=Fraction(0),
            beta6=Fraction(0), beta7=Fraction(0), beta8=Fraction(0), beta9=Fraction(0),
        )
        fields = spin2_mod.Spin2Fields.zeros(p.exact).replace(rank2_sym=g)
        bundle = spin2_mod.residual_system(fields, p, coeffs, p.m, basis)
        isolated = bundle["rank2"]
        expected = tuple(
            tuple(-(basis.metric[mu] * g[k][mu]) for mu in range(4)) for k in range(4)
        )
        report.add(
            f"spin2.single_term.{p.label()}",
            "alpha_1 beta_1 alone leaves the symmetric-tensor term",
            all(isolated[k][mu] == expected[k][mu] for k in range(4) for mu in range(4)),
        )
        if supplied is not None:
            residual = spin2_mod.residual_second_order(supplied, p, p.m)
            report.add(
                f"spin2.supplied_tensor.{p.label()}",
                EQ_SECOND_ORDER,
                is_zero(residual),
                max_residual=max_magnitude(residual),
                residual=[[format_scalar(residual[a][b]) for b in range(4)] for a in range(4)],
            )
    return report


def _metric_trace(x_cov):
    metric = (1, -1, -1, -1)
    acc = metric[0] * x_cov[0][0]
    for k in range(1, 4):
        acc = acc + metric[k] * x_cov[k][k]
    return acc


def _load_rank2_file(path: Path):
    if not path.is_file():
        raise ConfigError(f"tensor file not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"tensor file is not valid JSON: {exc}")
    if not isinstance(doc, dict) or "components" not in doc:
        raise ConfigError("tensor file must hold an object with 'components'")
    comps = doc["components"]
    symmetry = doc.get("symmetry", "symmetric")
    if symmetry not in ("symmetric", "antisymmetric", "none"):
        raise ConfigError("tensor symmetry must be symmetric, antisymmetric, or none")
    if not (isinstance(comps, list) and len(comps) == 4 and all(len(row) == 4 for row in comps)):
        raise ConfigError("components must be a 4x4 grid")
    grid = []
    for row in comps:
        out_row = []
        for entry in row:
            if not (isinstance(entry, list) and len(entry) == 4 and all(isinstance(v, int) for v in entry)):
                raise ConfigError("each entry must be [re_num, re_den, im_num, im_den] integers")
            rn, rd, im_n, im_d = entry
            if rd <= 0 or im_d <= 0:
                raise ConfigError("denominators must be positive")
            out_row.append(ExactScalar(Fraction(rn, rd), Fraction(im_n, im_d)))
        grid.append(tuple(out_row))
    grid = tuple(grid)
    if symmetry == "symmetric" and any(
        grid[a][b] != grid[b][a] for a in range(4) for b in range(4)
    ):
        raise ConfigError("tensor file declared symmetric but is not")
    if symmetry == "antisymmetric" and any(
        grid[a][b] != -grid[b][a] for a in range(4) for b in range(4)
    ):
        raise ConfigError("tensor file declared antisymmetric but is not")
    return grid


_COMMANDS = {
    "identities": cmd_identities,
    "derive": cmd_derive,
    "residual": cmd_residual,
    "polarization": cmd_polarization,
    "spin2": cmd_spin2,
}


def run(argv=None) -> tuple[int, str]:
    parser = _make_parser()
    args = parser.parse_args(argv)
    try:
        config = _merge_config(args)
        if config.get("tolerance") is not None:
            set_tolerance(config["tolerance"])
        report = _COMMANDS[args.command](config)
    except (ConfigError, MasslessSingular, ValueError) as exc:
        return 2, f"error: {exc}\n"
    rendered = report.render(config["format"])
    out_path = config.get("out")
    if out_path:
        Path(out_path).write_text(rendered, encoding="utf-8")
    return report.exit_code(), rendered


def main(argv=None) -> int:
    code, text = run(argv)
    stream = sys.stderr if code == 2 else sys.stdout
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
