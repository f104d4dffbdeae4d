"""Command line front end.

Exit status: 0 success, 1 usage or parse error, 2 no certificate,
3 oracle contradiction.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .certify import Assumption, Certificate, analyze_purity, certify, required_pairs
from .errors import CycpresError
from .formcheck import (
    FORM_MATCH,
    MagnusPair,
    SearchParams,
    brute_force_oracle,
    check_pair,
)
from .freeword import CyclicWord, Word, cyclically_reduce
from .oracle import INFINITE, abelian_order, exponent_matrix, smith_normal_form, todd_coxeter
from .presentation import CyclicPresentationSpec, OneRelatorSpec, gap_profile, normalize_span

EXIT_OK, EXIT_USAGE, EXIT_NO_CERTIFICATE, EXIT_CONTRADICTION = 0, 1, 2, 3

DEFAULT_MAX_COSETS = 100_000
DEFAULT_SEED = 20240607


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--max-exponent", type=int, default=d(None),
                   help="bound on exponents in form matching (default |w| + budget)")
    p.add_argument("--cancellation-budget", type=int, default=d(0),
                   help="total length of cancelling junction words allowed (default 0)")
    p.add_argument("--node-limit", type=int, default=d(500_000),
                   help="search nodes per form before a check is Inconclusive")
    p.add_argument("--max-cosets", type=int, default=d(DEFAULT_MAX_COSETS))
    p.add_argument("--seed", type=int, default=d(DEFAULT_SEED))
    p.add_argument("--format", choices=("text", "json"), default=d("text"))


def _params(args) -> SearchParams:
    return SearchParams(args.max_exponent, args.cancellation_budget, args.node_limit)


def _spec_from_text(text):
    """Parse, cyclically reduce and translate a word; returns (spec, offset, conjugated)."""
    word = Word.parse(text)
    c, g = cyclically_reduce(word)
    spec, offset = normalize_span(c)
    return spec, offset, bool(g.letters)


def _parse_pair_flag(spec, text):
    try:
        left, right = text.split("|")
        y1 = {int(x) for x in left.split(",") if x.strip()}
        y2 = {int(x) for x in right.split(",") if x.strip()}
    except ValueError:
        raise UsageError(f"bad pair {text!r}; expected 'i,j,...|p,q,...'")
    known = {
        frozenset((frozenset(p.Y1.indices), frozenset(p.Y2.indices)))
        for t in range(gap_profile(spec).t_min, spec.k + 1)
        for p in required_pairs(spec, t)
    }
    if frozenset((frozenset(y1), frozenset(y2))) not in known:
        raise UsageError(f"pair {text!r} is not among the pairs checked for {spec.relator}")
    return y1, y2


def _assumptions(spec, pairs, triple, source):
    out = []
    for text in pairs or ():
        y1, y2 = _parse_pair_flag(spec, text)
        out.append(Assumption.nonexceptional(
            spec, y1, y2, source or f"user-supplied: pair {text} does not intersect exceptionally"))
    if triple:
        out.append(Assumption.triple_trivial(spec, source or "user-supplied"))
    return out


# --- analyze ------------------------------------------------------------------------


def _analyze(args):
    spec, offset, conjugated = _spec_from_text(args.word)
    params = _params(args)
    profile = gap_profile(spec)
    report = analyze_purity(spec, (), params)
    if args.format == "json":
        print(json.dumps({
            "word": str(spec.relator),
            "offset": offset,
            "conjugated": conjugated,
            "k": spec.k,
            "involved": sorted(profile.involved),
            "max_interior_gap": profile.max_interior_gap,
            "t_min_syntactic": profile.t_min,
            "candidates": [
                {"t": c.t, "holds": c.holds, "checks": [v.to_json() for v in c.verdicts]}
                for c in report.candidates
            ],
            "certified_t": report.certified_t,
        }, indent=2))
        return EXIT_OK
    print(f"word        {spec.relator}")
    if offset:
        print(f"offset      {offset} (subscripts lowered by {offset})")
    if conjugated:
        print("note        input was cyclically reduced")
    print(f"k           {spec.k}")
    print(f"involved    {{{', '.join(map(str, sorted(profile.involved)))}}}")
    print(f"gap         {profile.max_interior_gap}")
    print(f"t_min       {profile.t_min}")
    for cand in report.candidates:
        print(f"t = {cand.t}: {'pure' if cand.holds else 'not certified'}")
        for pair, v in zip(cand.pairs, cand.verdicts):
            y1, y2 = (",".join(map(str, s)) for s in pair)
            line = f"  ({{{y1}}}, {{{y2}}})  {v.outcome}"
            if v.reason:
                line += f"  [{v.reason}]"
            print(line)
            if v.witness is not None:
                if args.explain:
                    for text in v.witness.explain(spec.relator):
                        print("    " + text)
                else:
                    comps = ", ".join(f"{n} = {c}" for n, c in
                                      zip(v.witness.component_names, v.witness.components))
                    print(f"    form {v.witness.form}: {comps}")
    print(f"certified t {report.certified_t if report.certified_t is not None else '-'}")
    return EXIT_OK


# --- certify ------------------------------------------------------------------------


def _certify(args):
    params = _params(args)
    if args.check:
        with open(args.check, encoding="utf-8") as fh:
            text = fh.read()
        cert = Certificate.from_json(text)
        spec = OneRelatorSpec.from_word(cert.word)
        if cert.checks:
            params = cert.checks[0].search_params
        again = certify(spec, cert.assumptions, params).to_json()
        if again != text:
            print(f"{args.check}: certificate does not reproduce", file=sys.stderr)
            return EXIT_USAGE
        print(f"{args.check}: reproduced byte for byte")
        return EXIT_OK if cert.certified else EXIT_NO_CERTIFICATE
    if args.word is None:
        raise UsageError("certify needs a word or --check FILE")
    spec, _, _ = _spec_from_text(args.word)
    assumptions = _assumptions(spec, args.assume_nonexceptional, args.assume_triple_trivial,
                               args.source)
    cert = certify(spec, assumptions, params)
    text = cert.to_json()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not cert.certified:
        print("no certificate", file=sys.stderr)
        return EXIT_NO_CERTIFICATE
    return EXIT_OK


# --- oracle -------------------------------------------------------------------------


def _contradiction(cert, n, order, outcome):
    problems = []
    if outcome.completed:
        if order is INFINITE:
            problems.append(f"enumeration closed at {outcome.order} but the abelianization is infinite")
        elif outcome.order % order:
            problems.append(f"abelian order {order} does not divide group order {outcome.order}")
        if cert is not None and cert.certified and n >= cert.n_min:
            problems.append(
                f"certificate claims G_n infinite for n >= {cert.n_min}, "
                f"but enumeration closed at {outcome.order} for n = {n}")
    return problems


def _oracle(args):
    word = Word.parse(args.word)
    c, _ = cyclically_reduce(word)
    p = CyclicPresentationSpec(args.n, c)
    snf = smith_normal_form(exponent_matrix(p))
    order = abelian_order(p)
    outcome = todd_coxeter(p, args.max_cosets)
    cert = None
    if args.certificate:
        with open(args.certificate, encoding="utf-8") as fh:
            cert = Certificate.from_json(fh.read())
        if not CyclicWord.parse(cert.word).is_rotation_of(normalize_span(c)[0].relator):
            raise UsageError("certificate is for a different word")
    problems = _contradiction(cert, args.n, order, outcome)
    if args.format == "json":
        print(json.dumps({
            "word": str(c), "n": args.n,
            "invariant_factors": list(snf.invariants),
            "abelian_order": str(order) if order is INFINITE else order,
            "enumeration": outcome.to_json(),
            "contradictions": problems,
        }, indent=2))
    else:
        print(f"G_{args.n}({c})")
        print(f"  invariant factors  {snf}")
        print(f"  abelian order      {order}")
        print(f"  todd-coxeter       {outcome} [{outcome.strategy}; "
              f"{outcome.defined} defined, {outcome.collapsed} collapsed]")
        for msg in problems:
            print(f"  CONTRADICTION: {msg}")
    return EXIT_CONTRADICTION if problems else EXIT_OK


# --- corpus -------------------------------------------------------------------------


@dataclass
class CorpusEntry:
    line: int
    word: str
    n: int | None = None
    assume_pairs: list = field(default_factory=list)
    assume_triple: bool = False


def parse_corpus(text):
    """Parse corpus text; returns ``(entries, errors)`` with 1-based line numbers."""
    entries, errors = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        entry = CorpusEntry(lineno, "")
        try:
            for part in body.split(";"):
                part = part.strip()
                if part == "assume-triple-trivial":
                    entry.assume_triple = True
                    continue
                key, sep, value = part.partition("=")
                key, value = key.strip(), value.strip()
                if not sep or not value:
                    raise ValueError(f"expected 'key = value', got {part!r}")
                if key == "w":
                    Word.parse(value)
                    entry.word = value
                elif key == "n":
                    entry.n = int(value)
                    if entry.n < 1:
                        raise ValueError("n must be positive")
                elif key == "assume-nonexceptional":
                    entry.assume_pairs.append(value)
                else:
                    raise ValueError(f"unknown field {key!r}")
            if not entry.word:
                raise ValueError("missing 'w = <word>'")
            spec, _, _ = _spec_from_text(entry.word)
            _assumptions(spec, entry.assume_pairs, entry.assume_triple, None)
        except (ValueError, CycpresError, UsageError) as exc:
            errors.append((lineno, str(exc)))
            continue
        entries.append(entry)
    return entries, errors


def _run_entry(job):
    entry, params, max_cosets = job
    spec, _, _ = _spec_from_text(entry.word)
    assumptions = _assumptions(spec, entry.assume_pairs, entry.assume_triple, None)
    cert = certify(spec, assumptions, params)
    row = {
        "line": entry.line,
        "word": str(spec.relator),
        "k": spec.k,
        "theorem": cert.theorem,
        "n_min": cert.n_min,
        "n": entry.n,
        "abelian_order": None,
        "enumeration": None,
        "contradictions": [],
    }
    if entry.n is not None:
        c, _ = cyclically_reduce(Word.parse(entry.word))
        p = CyclicPresentationSpec(entry.n, c)
        order = abelian_order(p)
        outcome = todd_coxeter(p, max_cosets)
        row["abelian_order"] = str(order) if order is INFINITE else order
        row["enumeration"] = str(outcome)
        row["contradictions"] = _contradiction(cert, entry.n, order, outcome)
    return row


def run_corpus(entries, params, max_cosets, jobs=1):
    jobs_in = [(e, params, max_cosets) for e in entries]
    if jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_run_entry, jobs_in))
    return [_run_entry(j) for j in jobs_in]


def _corpus(args):
    with open(args.path, encoding="utf-8") as fh:
        text = fh.read()
    entries, errors = parse_corpus(text)
    if errors:
        for lineno, msg in errors:
            print(f"{args.path}:{lineno}: {msg}", file=sys.stderr)
        return EXIT_USAGE
    jobs = args.jobs or os.cpu_count() or 1
    rows = run_corpus(entries, _params(args), args.max_cosets, jobs)
    certified = sum(1 for r in rows if r["theorem"])
    contradictions = sum(1 for r in rows if r["contradictions"])
    summary = {"entries": len(rows), "certified": certified,
               "no_certificate": len(rows) - certified, "contradictions": contradictions}
    if args.format == "json":
        print(json.dumps({"rows": rows, "summary": summary}, indent=2))
    else:
        for r in rows:
            status = f"{r['theorem']} n>={r['n_min']}" if r["theorem"] else "NoCertificate"
            extra = ""
            if r["n"] is not None:
                extra = f"  n={r['n']} ab={r['abelian_order']} tc={r['enumeration']}"
            print(f"{r['line']:>4}  {r['word']:<32} {status}{extra}")
            for msg in r["contradictions"]:
                print(f"      CONTRADICTION: {msg}")
        print(f"entries {summary['entries']}  certified {certified}  "
              f"no certificate {summary['no_certificate']}  contradictions {contradictions}")
    return EXIT_CONTRADICTION if contradictions else EXIT_OK


# --- crosscheck ---------------------------------------------------------------------


def random_relator(rng, max_k=3, max_len=10):
    """A random nonempty cyclically reduced word spanning x_0..x_k."""
    while True:
        k = rng.randint(1, max_k)
        length = rng.randint(2, max_len)
        letters = [(rng.randint(0, k), rng.choice((1, -1))) for _ in range(length)]
        c, _ = cyclically_reduce(Word(letters))
        if len(c) >= 2 and len({i for i, _ in c.letters}) >= 2:
            return normalize_span(c)[0]


def magnus_pairs(spec):
    """Every unordered pair of distinct Magnus subsets of spec."""
    from itertools import combinations

    subsets = [
        frozenset(s)
        for r in range(spec.k + 1)
        for s in combinations(range(spec.k + 1), r)
        if not spec.involved <= set(s)
    ]
    return [MagnusPair.of(spec, a, b) for a, b in combinations(subsets, 2)]


def _crosscheck(args):
    rng = random.Random(args.seed)
    params = _params(args)
    disagreements = 0
    pairs = 0
    for _ in range(args.count):
        spec = random_relator(rng, args.max_k, args.max_len)
        for pair in magnus_pairs(spec):
            pairs += 1
            a = check_pair(pair, params)
            b = brute_force_oracle(pair, max(12, args.max_len), params)
            if a.outcome != b.outcome:
                disagreements += 1
                print(f"disagree: {spec.relator} {pair}: {a.outcome} vs {b.outcome}")
    print(f"words {args.count}  pairs {pairs}  disagreements {disagreements}")
    return EXIT_CONTRADICTION if disagreements else EXIT_OK


def build_parser():
    parser = _Parser(prog="cycpres", description="Infiniteness certificates for G_n(w).")
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="gap profile and pair checks for a word")
    _add_common(p, suppress=True)
    p.add_argument("word")
    p.add_argument("--explain", action="store_true", help="print witness expansions")
    p.set_defaults(func=_analyze)

    p = sub.add_parser("certify", help="emit a certificate (JSON)")
    _add_common(p, suppress=True)
    p.add_argument("word", nargs="?")
    p.add_argument("--assume-nonexceptional", action="append", metavar="I,J|P,Q",
                   help="assume the named Magnus pair does not intersect exceptionally")
    p.add_argument("--assume-triple-trivial", action="store_true",
                   help="assume the k-fold Magnus intersection in the stem product is trivial")
    p.add_argument("--source", help="justification recorded with the assumptions")
    p.add_argument("-o", "--output")
    p.add_argument("--check", metavar="FILE", help="re-run a certificate and compare bytes")
    p.set_defaults(func=_certify)

    p = sub.add_parser("oracle", help="abelianization and coset enumeration of G_n(w)")
    _add_common(p, suppress=True)
    p.add_argument("word")
    p.add_argument("-n", "--n", type=int, required=True)
    p.add_argument("--certificate", help="certificate file to test against")
    p.set_defaults(func=_oracle)

    p = sub.add_parser("corpus", help="certify every presentation in a corpus file")
    _add_common(p, suppress=True)
    p.add_argument("path")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPUs)")
    p.set_defaults(func=_corpus)

    p = sub.add_parser("crosscheck", help="compare the matcher with the brute-force oracle")
    _add_common(p, suppress=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--max-len", type=int, default=10)
    p.set_defaults(func=_crosscheck)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CycpresError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
