"""Command-line surface: exact values, table reproduction, property suites.

Exit codes: 0 success, 1 input validation error, 2 verification mismatch
(--diff or check-suite failures).
"""
from __future__ import annotations

import json
import random
import sys
from fractions import Fraction

import click

from . import closed_forms, partitions, piecewise, recursion, tables
from .core import (
    PiValue,
    Signature,
    ValidationError,
    WeightVector,
    minimal_denominator,
    parse_signature,
    parse_weights,
    weights_from_signature,
)


class CountingCache(dict):
    """Memo dict that counts hits for --verbose reporting."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.hits = 0

    def get(self, key, default=None):
        value = super().get(key, default)
        if value is not None:
            self.hits += 1
        return value


def _fail(message: str, code: int = 1):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_cache(path: str | None) -> CountingCache:
    cache = CountingCache()
    if not path:
        return cache
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        entries = raw["entries"] if isinstance(raw, dict) and "entries" in raw else raw
        for key, value in entries.items():
            weights = tuple(Fraction(part) for part in key.split(","))
            WeightVector(weights)  # validate before trusting
            cache[weights] = Fraction(value)
    except FileNotFoundError:
        pass
    except (ValueError, KeyError, TypeError, AttributeError, ValidationError,
            json.JSONDecodeError) as exc:
        click.echo(f"warning: ignoring corrupt cache file {path}: {exc}", err=True)
        return CountingCache()
    return cache


def _save_cache(path: str | None, cache: dict) -> None:
    if not path:
        return
    entries = {",".join(str(x) for x in key): str(value)
               for key, value in cache.items()}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"version": 1, "entries": entries}, fh, indent=0)


def _report_cache(cache: CountingCache, verbose: bool) -> None:
    if verbose:
        click.echo(f"cache: {cache.hits} hits, {len(cache)} entries", err=True)


def _parse_weights_opt(weights: str | None, signature: str | None,
                       neg_orders: bool) -> WeightVector:
    if weights and signature:
        _fail("pass either --weights or --signature, not both")
    if weights:
        return parse_weights(weights)
    if signature:
        return weights_from_signature(parse_signature(signature, neg_orders))
    _fail("one of --weights or --signature is required")


@click.group()
def main():
    """Exact volumes of moduli of flat cone metrics on the sphere."""


@main.command("an")
@click.option("--weights", help='comma-separated weights, e.g. "2/3,1/3,1/3,1/3,1/3"')
@click.option("--signature", help='orders "k1,...,kn:d"')
@click.option("--neg-orders", is_flag=True, help="negate signature orders (table labels)")
@click.option("--cache", "cache_path", type=click.Path(), help="memo cache JSON file")
@click.option("--approx", is_flag=True, help="append decimal renderings")
@click.option("--verbose", is_flag=True)
def cmd_an(weights, signature, neg_orders, cache_path, approx, verbose):
    """Print the normalized intersection value, its integer form, and the
    minimal denominator."""
    try:
        mu = _parse_weights_opt(weights, signature, neg_orders)
    except ValidationError as exc:
        _fail(str(exc))
    cache = _load_cache(cache_path)
    value = recursion.a_n(mu, cache)
    e = minimal_denominator(mu)
    j = Fraction(e) ** (mu.n - 3) * value
    click.echo(f"A = {value}")
    click.echo(f"J = {j}")
    click.echo(f"e = {e}")
    if approx:
        click.echo(f"A ~ {float(value):.12g}")
    _report_cache(cache, verbose)
    _save_cache(cache_path, cache)


@main.command("volume")
@click.option("--weights")
@click.option("--signature")
@click.option("--neg-orders", is_flag=True)
@click.option("--cache", "cache_path", type=click.Path())
@click.option("--approx", is_flag=True)
@click.option("--verbose", is_flag=True)
def cmd_volume(weights, signature, neg_orders, cache_path, approx, verbose):
    """Print the normalized volume as an exact pi-multiple."""
    try:
        mu = _parse_weights_opt(weights, signature, neg_orders)
    except ValidationError as exc:
        _fail(str(exc))
    cache = _load_cache(cache_path)
    value = recursion.vol1(mu, cache)
    click.echo(f"vol1 = {value}")
    if approx:
        click.echo(f"vol1 ~ {value.approx():.12g}")
    _report_cache(cache, verbose)
    _save_cache(cache_path, cache)


@main.command("table")
@click.option("--appendix-b", is_flag=True, default=True,
              help="reproduce the reference tables (default)")
@click.option("--n", "npoints", type=int, help="4 or 5")
@click.option("--csv", "as_csv", is_flag=True)
@click.option("--json", "as_json", is_flag=True)
@click.option("--diff", is_flag=True, help="compare against embedded expected values")
@click.option("--columns", default="col3,ratio,mv",
              help="columns checked by --diff (comma list of col3,ratio,mv)")
@click.option("--cache", "cache_path", type=click.Path())
@click.option("--verbose", is_flag=True)
def cmd_table(appendix_b, npoints, as_csv, as_json, diff, columns, cache_path, verbose):
    """Recompute a reference table; with --diff, verify it cell by cell."""
    if npoints not in (4, 5):
        _fail("--n must be 4 or 5")
    wanted = [c.strip() for c in columns.split(",") if c.strip()]
    if any(c not in ("col3", "ratio", "mv") for c in wanted):
        _fail("--columns entries must be among col3,ratio,mv")
    cache = _load_cache(cache_path)
    if diff:
        failures = []
        for row in tables.expected_rows(npoints):
            computed = tables.compute_row(row, cache)
            messages = [m for m in computed.mismatches()
                        if m.split(" ", 1)[0] in wanted]
            tag = f"d={row.d} ({row.label_text()})"
            if messages:
                failures.append(tag)
                for m in messages:
                    click.echo(f"{tag}: MISMATCH {m}")
            elif computed.ratio is None and {"ratio", "mv"} & set(wanted):
                click.echo(f"{tag}: ok (ratio/mv unsupported)")
            else:
                click.echo(f"{tag}: ok")
        _report_cache(cache, verbose)
        _save_cache(cache_path, cache)
        if failures:
            click.echo(f"{len(failures)} row(s) mismatched", err=True)
            sys.exit(2)
        return
    if as_csv:
        click.echo(tables.table_csv(npoints, cache), nl=False)
    elif as_json:
        click.echo(json.dumps(tables.table_json(npoints, cache), indent=1))
    else:
        click.echo(tables.table_text(npoints, cache))
    _report_cache(cache, verbose)
    _save_cache(cache_path, cache)


@main.command("piecewise")
@click.option("--sample", required=False, help="generic rational weight sample")
@click.option("--pretty", is_flag=True, help="indent the JSON output")
def cmd_piecewise(sample, pretty):
    """Print the volume polynomial on the sample's sign domain as JSON."""
    if not sample:
        _fail("--sample is required")
    try:
        point = parse_weights(sample)
        domain = piecewise.SignDomain(point)
    except ValidationError as exc:
        _fail(str(exc))
    poly = piecewise.an_polynomial(domain)
    payload = {
        "n": domain.n,
        "sample": [str(x) for x in point],
        "signs": domain.signs_json(),
        "degree": poly.total_degree(),
        "value_at_sample": str(poly.evaluate(point.entries)),
        "terms": poly.to_json(),
    }
    click.echo(json.dumps(payload, indent=1 if pretty else None))


@main.command("explain")
@click.option("--weights", required=False)
@click.option("--pretty", is_flag=True)
def cmd_explain(weights, pretty):
    """Print the primary partition families of a weight vector as JSON."""
    if not weights:
        _fail("--weights is required")
    try:
        mu = parse_weights(weights)
    except ValidationError as exc:
        _fail(str(exc))
    families = partitions.enum_all(mu)
    payload = {
        "weights": [str(x) for x in mu],
        "families": {tag: [rec.to_json() for rec in recs]
                     for tag, recs in families.items()},
        "counts": {tag: len(recs) for tag, recs in families.items()},
    }
    click.echo(json.dumps(payload, indent=1 if pretty else None))


def _suite_kontsevich(max_n: int, seed: int, report) -> bool:
    ok = True
    cache: dict = {}
    for n in range(4, max_n + 1, 2):
        for kappa in recursion.enumerate_odd_signatures(n):
            aez = recursion.mv_quadratic_aez(kappa)
            product = PiValue(Fraction(2), 2)
            for k in kappa.orders:
                product = product * closed_forms.v_kontsevich(k)
            agree = aez == product
            mu = weights_from_signature(Signature(kappa.orders, 2))
            chain = recursion.vol1(mu, cache) * Fraction(
                2 * (n - 2) * (-1) ** ((n - 2) // 2) * 2 ** (n - 2), 2)
            agree = agree and aez == chain
            ok &= report(f"kontsevich {kappa.orders}", agree)
    return ok


def _suite_identity(max_n: int, seed: int, report) -> bool:
    ok = True
    for n in range(4, max_n + 1, 2):
        for kappa in recursion.enumerate_odd_signatures(n):
            lhs, rhs = closed_forms.identity_n_minus_1(kappa)
            good = lhs == rhs
            for minus in range(0, 3):
                poles = sum(1 for k in kappa.orders if k == -1)
                positives = sum(1 for k in kappa.orders if k > 0)
                if positives + min(minus, poles) < 1 or minus > poles:
                    continue
                blhs, brhs = closed_forms.f_p22_bridge(kappa, minus_ones=minus)
                good &= blhs == brhs
            ok &= report(f"identity {kappa.orders}", good)
    return ok


def _suite_sympoly(max_n: int, seed: int, report) -> bool:
    ok = True
    shifts = [Fraction(0), Fraction(1), Fraction(2), Fraction(1, 2)]
    for n in range(2, min(max_n, 8) + 1):
        good = all(
            closed_forms.sum_dependence_check(n, a, b, 20, seed=seed + n)
            for a in shifts for b in shifts
        )
        ok &= report(f"sympoly n={n}", good)
    return ok


def _suite_oracle5(max_n: int, seed: int, report) -> bool:
    ok = True
    cache: dict = {}
    for row in tables.expected_rows(5):
        kappa = row.signature()
        mu = weights_from_signature(kappa)
        good = recursion.a5_direct(mu, kappa.level) == recursion.a_n(mu, cache)
        ok &= report(f"oracle5 d={row.d} ({row.label_text()})", good)
    rng = random.Random(seed)
    good = True
    for _ in range(50):
        mu, d = _random_rational_weights(rng, 5)
        good &= recursion.a5_direct(mu, d) == recursion.a_n(mu, cache)
    ok &= report("oracle5 random", good)
    return ok


def _random_rational_weights(rng: random.Random, n: int):
    while True:
        d = rng.randint(2, 12)
        ks = [rng.randint(1 - d, d + 3) for _ in range(n - 1)]
        last = -2 * d - sum(ks)
        if last < 1 - d:
            continue
        ks.append(last)
        return weights_from_signature(Signature(tuple(ks), d)), d


def _suite_dform(max_n: int, seed: int, report) -> bool:
    ok = True
    rng = random.Random(seed)
    cache: dict = {}
    for n in range(5, max(5, min(max_n, 7)) + 1):
        good = True
        for _ in range(25):
            mu, d = _random_rational_weights(rng, n)
            e = minimal_denominator(mu)
            lhs = recursion.recursive_rhs_dform(mu, d, cache)
            rhs = Fraction(d, e) ** (n - 3) * recursion.j_n(mu, cache)
            good &= lhs == rhs
        ok &= report(f"dform n={n}", good)
    return ok


_SUITES = {
    "kontsevich": _suite_kontsevich,
    "identity": _suite_identity,
    "sympoly": _suite_sympoly,
    "oracle5": _suite_oracle5,
    "dform": _suite_dform,
}


@main.command("check")
@click.option("--suite", "suite_name", required=False)
@click.option("--max-n", "max_n", type=int, default=8)
@click.option("--seed", type=int, default=0)
def cmd_check(suite_name, max_n, seed):
    """Run a named property suite at desk scale; nonzero exit on failure."""
    if suite_name not in _SUITES:
        known = ", ".join(sorted(_SUITES))
        _fail(f"unknown suite {suite_name!r} (choose from {known})")
    failures = 0

    def report(name: str, good: bool) -> bool:
        nonlocal failures
        click.echo(f"{'ok  ' if good else 'FAIL'} {name}")
        if not good:
            failures += 1
        return good

    _SUITES[suite_name](max_n, seed, report)
    if failures:
        click.echo(f"{failures} check(s) failed", err=True)
        sys.exit(2)
    click.echo("all checks passed")


if __name__ == "__main__":
    main()
