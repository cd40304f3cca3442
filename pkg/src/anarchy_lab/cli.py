"""Command-line interface.

Exit status: 0 on success, 1 when ``check --expect`` disagrees with the
computed verdict (or ``oracle`` finds a mismatch), 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import random
import sys
from pathlib import Path

from . import __version__
from .adversary import Custom, InvalidDistributionError, critical_links, custom_from_json, distribution, parse_adversary
from .bridges import DisconnectedGraphError, NotALinkError, bridge_set, bridge_tree, relevance, relevance_naive, separation, total_separation, tree_diameter
from .cost import cost_report, format_value, graph_social_cost, optimum, social_cost
from .dynamics import POLICIES, pairwise_dynamics
from .equilibrium import CapExceededError, Concept, check
from .fixtures import FIXTURE_NAMES, FixtureError, make_fixture, parse_fixture, random_connected_graph
from .game import GameParams, Graph, Rule, StrategyProfile, build_graph
from .io import GraphFormatError, link_key, parse_rational, rational_map, read_graph, read_profile, to_dot, write_graph, write_profile
from .search import enumerate_equilibria, price_of_anarchy

FIXED_TABLE_NOTE = "a fixed link table cannot price deviations"

INPUT_ERRORS = (
    GraphFormatError,
    FixtureError,
    InvalidDistributionError,
    CapExceededError,
    DisconnectedGraphError,
    NotALinkError,
    ValueError,
    OSError,
)


class UsageError(Exception):
    pass


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _concept(text):
    try:
        return Concept(text.lower())
    except ValueError:
        raise argparse.ArgumentTypeError(f"unknown concept {text!r}") from None


def _load_subject(args, rule: Rule | None = None):
    """Graph or profile from ``--graph`` / ``--fixture``; ULF reads owner lists."""
    if bool(args.graph) == bool(args.fixture):
        raise UsageError("give exactly one of --graph FILE or --fixture NAME[:PARAMS]")
    if args.fixture:
        return make_fixture(parse_fixture(args.fixture))
    text = Path(args.graph).read_text()
    if rule is Rule.ULF:
        return read_profile(text)
    return read_graph(text)


def _adversary(args):
    table = getattr(args, "adversary_table", None)
    if table:
        return custom_from_json(Path(table).read_text())
    return parse_adversary(args.adversary)


def _as_rule(obj, rule: Rule):
    if rule is Rule.ULF:
        if not isinstance(obj, StrategyProfile):
            raise UsageError("ULF concepts need a profile (owner list or *_profile fixture)")
        return obj
    if isinstance(obj, StrategyProfile):
        return build_graph(obj, Rule.ULF)
    return obj


def _verdict_dict(verdict) -> dict:
    w = verdict.witness
    out = {"holds": verdict.holds, "witness": None}
    if w is not None:
        out["witness"] = {
            "kind": w.kind,
            "players": list(w.players),
            "links": [link_key(e) for e in w.links],
            "before": [format_value(x) for x in w.before],
            "after": [format_value(x) for x in w.after],
        }
        if w.row is not None:
            out["witness"]["row"] = list(w.row)
    return out


def _verdict_text(name: str, verdict) -> str:
    if verdict.holds:
        return f"{name}: true"
    w = verdict.witness
    detail = f"{w.kind} by {','.join(map(str, w.players))}"
    if w.links:
        detail += f" links {' '.join(link_key(e) for e in w.links)}"
    if w.row is not None:
        detail += f" row {list(w.row)}"
    costs = ", ".join(f"{format_value(b)} -> {format_value(a)}" for b, a in zip(w.before, w.after))
    return f"{name}: false ({detail}; cost {costs})"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _graph_summary(g: Graph) -> dict:
    out = {"n": g.n, "m": g.m, "links": [link_key(e) for e in g.sorted_links()], "connected": g.is_connected}
    if g.is_connected:
        tree = bridge_tree(g)
        out["bridges"] = [link_key(e) for e in sorted(bridge_set(g))]
        out["bridge_tree"] = {
            "nodes": [
                {"id": k, "weight": tree.weight(k), "members": sorted(tree.component(k))}
                for k in tree.node_ids
            ],
            "links": [link_key(e) for e in sorted(tree.tree_links)],
            "diameter": tree_diameter(tree),
        }
        out["total_separation"] = total_separation(g)
    else:
        out["bridges"] = None
        out["bridge_tree"] = None
        out["total_separation"] = None
    return out


def cmd_analyze(args, out) -> int:
    adv = _adversary(args)
    rule = Rule(args.rule) if args.rule else None
    obj = _load_subject(args, rule)
    if rule is None:
        rule = Rule.ULF if isinstance(obj, StrategyProfile) else Rule.BLF
    if isinstance(obj, Graph):
        g = obj
        profile = StrategyProfile.canonical(g)
        if rule is Rule.ULF:
            raise UsageError("ULF analysis needs a profile (owner list or *_profile fixture)")
    else:
        profile = obj
        g = build_graph(profile, rule)
    params = GameParams(g.n, args.alpha, rule, adv)
    report = {
        "graph": _graph_summary(g),
        "params": {"alpha": format_value(args.alpha), "adversary": adv.name, "rule": rule.value},
    }
    crit = frozenset()
    if g.is_connected and g.links:
        report["distribution"] = rational_map(distribution(g, adv).probs)
        crit, top = critical_links(g)
        report["critical_links"] = {"links": [link_key(e) for e in sorted(crit)], "sep_max": top}
    else:
        report["distribution"] = None
        report["critical_links"] = None
    costs = cost_report(profile, params)
    report["costs"] = costs.as_dict()
    opt, witness = optimum(g.n, args.alpha, rule)
    report["optimum"] = {"value": format_value(opt), "witness": "cycle" if witness.m == g.n else "star"}
    report["ratio"] = format_value(costs.social / opt) if g.is_connected else "Infinity"
    concepts = (Concept.NE_ULF, Concept.MAXNE_ULF) if rule is Rule.ULF else (Concept.PNE_BLF, Concept.PS_BLF)
    verdicts, texts = {}, []
    for c in concepts:
        if isinstance(adv, Custom):
            # a fixed table names links of this graph only, so deviations cannot be priced
            verdicts[c.value] = {"holds": None, "error": FIXED_TABLE_NOTE}
            texts.append(f"{c.value}: skipped ({FIXED_TABLE_NOTE})")
            continue
        try:
            verdict = check(profile if rule is Rule.ULF else g, params, c)
        except CapExceededError as exc:
            verdicts[c.value] = {"holds": None, "error": str(exc)}
            texts.append(f"{c.value}: skipped ({exc})")
        else:
            verdicts[c.value] = _verdict_dict(verdict)
            texts.append(_verdict_text(c.value, verdict))
    report["verdicts"] = verdicts

    if args.format == "json":
        out.write(_dump(report))
    elif args.format == "dot":
        owners = None
        if rule is Rule.ULF:
            owners = {tuple(sorted((v, w))): v for v, w in profile.request_pairs()}
        out.write(to_dot(g, bridge_set(g), crit, owners))
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["player", "building", "indirect", "total"])
        for row in report["costs"]["players"]:
            writer.writerow([row["player"], row["building"], row["indirect"], row["total"]])
    else:
        gs = report["graph"]
        out.write(f"n={gs['n']} m={gs['m']} connected={str(gs['connected']).lower()}\n")
        if gs["bridges"] is not None:
            tree = gs["bridge_tree"]
            weights = " ".join(str(node["weight"]) for node in tree["nodes"])
            out.write(f"bridges ({len(gs['bridges'])}): {' '.join(gs['bridges'])}\n")
            out.write(f"bridge tree weights: {weights}; diameter {tree['diameter']}\n")
            out.write(f"total separation: {gs['total_separation']}\n")
        out.write(f"alpha={report['params']['alpha']} adversary={adv.name} rule={rule.value}\n")
        if report["critical_links"]:
            cl = report["critical_links"]
            out.write(f"critical links (sep {cl['sep_max']}): {' '.join(cl['links'])}\n")
        for row in report["costs"]["players"]:
            out.write(
                f"player {row['player']}: building {row['building']} "
                f"indirect {row['indirect']} total {row['total']}\n"
            )
        out.write(f"social cost: {report['costs']['social']}\n")
        out.write(f"optimum: {report['optimum']['value']} ({report['optimum']['witness']})\n")
        out.write(f"ratio: {report['ratio']}\n")
        out.write("".join(t + "\n" for t in texts))
    return 0


def cmd_check(args, out) -> int:
    adv = _adversary(args)
    concept = args.concept
    if isinstance(adv, Custom):
        raise UsageError(FIXED_TABLE_NOTE)
    obj = _as_rule(_load_subject(args, concept.rule), concept.rule)
    params = GameParams(obj.n, args.alpha, concept.rule, adv)
    verdict = check(obj, params, concept)
    if args.format == "json":
        out.write(_dump({"concept": concept.value, **_verdict_dict(verdict)}))
    else:
        out.write(_verdict_text(concept.value, verdict) + "\n")
    if args.expect is None:
        return 0
    return 0 if verdict.holds == (args.expect == "true") else 1


def _subject_text(obj) -> str:
    if isinstance(obj, Graph):
        return " ".join(link_key(e) for e in obj.sorted_links())
    return " ".join(f"{v}>{w}" for v, w in obj.request_pairs())


def cmd_enumerate(args, out) -> int:
    adv = parse_adversary(args.adversary)
    found = enumerate_equilibria(
        args.n, args.alpha, adv, args.concept,
        dedup=not args.labeled, connected_only=not args.include_disconnected,
    )
    params = GameParams(args.n, args.alpha, args.concept.rule, adv)
    rows = []
    for obj in found:
        g = obj if isinstance(obj, Graph) else build_graph(obj, Rule.ULF)
        sc = graph_social_cost(g, params) if isinstance(obj, Graph) else social_cost(obj, params)
        rows.append({"links": _subject_text(obj), "m": g.m, "social": format_value(sc)})
    if args.format == "json":
        out.write(_dump({"n": args.n, "alpha": format_value(args.alpha), "adversary": adv.name,
                         "concept": args.concept.value, "labeled": args.labeled, "count": len(rows),
                         "equilibria": rows}))
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["index", "m", "social", "links"])
        for i, row in enumerate(rows):
            writer.writerow([i, row["m"], row["social"], row["links"]])
    else:
        out.write(f"{len(rows)} equilibria ({args.concept.value}, n={args.n}, alpha={format_value(args.alpha)}, {adv.name})\n")
        for row in rows:
            out.write(f"m={row['m']} social={row['social']}: {row['links']}\n")
    return 0


def _poa_row(rep) -> dict:
    return {
        "n": rep.n,
        "alpha": format_value(rep.alpha),
        "adversary": rep.adversary,
        "concept": rep.concept.value,
        "optimum": format_value(rep.optimum),
        "worst": None if rep.empty else format_value(rep.worst),
        "ratio": None if rep.empty else format_value(rep.ratio),
        "count": rep.count,
        "witness": None if rep.empty else _subject_text(rep.witness),
    }


def cmd_poa(args, out) -> int:
    adv = parse_adversary(args.adversary)
    if args.sweep:
        alphas = [parse_rational(x) for x in args.sweep.split(",") if x.strip()]
    elif args.alpha is not None:
        alphas = [args.alpha]
    else:
        raise UsageError("poa needs --alpha or --sweep")
    rows = [
        _poa_row(price_of_anarchy(args.n, a, adv, args.concept, dedup=not args.labeled))
        for a in alphas
    ]
    fmt = args.format or ("csv" if args.sweep else "text")
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        cols = ["n", "alpha", "adversary", "concept", "optimum", "worst", "ratio", "count"]
        writer.writerow(cols)
        for row in rows:
            writer.writerow(["" if row[c] is None else row[c] for c in cols])
    elif fmt == "json":
        out.write(_dump(rows if args.sweep else rows[0]))
    else:
        for row in rows:
            if row["ratio"] is None:
                out.write(f"alpha={row['alpha']}: no equilibrium found (optimum {row['optimum']})\n")
            else:
                out.write(
                    f"alpha={row['alpha']}: ratio {row['ratio']} = {row['worst']} / {row['optimum']} "
                    f"over {row['count']} equilibria; worst: {row['witness']}\n"
                )
    return 0


def cmd_dynamics(args, out) -> int:
    adv = _adversary(args)
    if isinstance(adv, Custom):
        raise UsageError(FIXED_TABLE_NOTE)
    g = _as_rule(_load_subject(args), Rule.BLF)
    params = GameParams(g.n, args.alpha, Rule.BLF, adv)
    result = pairwise_dynamics(g, params, args.policy, args.seed, args.max_steps)
    steps = [
        {
            "move": m.kind,
            "link": link_key(m.link),
            "players": list(m.players),
            "before": [format_value(x) for x in m.before],
            "after": [format_value(x) for x in m.after],
        }
        for m in result.trajectory
    ]
    if args.format == "json":
        out.write(_dump({"steps": steps, "final": [link_key(e) for e in result.final.sorted_links()],
                         "stable": result.stable}))
    elif args.format == "dot":
        out.write(to_dot(result.final, bridge_set(result.final)))
    else:
        for i, s in enumerate(steps, 1):
            out.write(f"{i}: {s['move']} {s['link']} by {','.join(map(str, s['players']))}\n")
        out.write(f"stable: {str(result.stable).lower()} after {len(steps)} moves\n")
        out.write(write_graph(result.final))
    return 0


def cmd_construct(args, out) -> int:
    obj = make_fixture(parse_fixture(args.fixture))
    if args.format == "json":
        if isinstance(obj, Graph):
            out.write(_dump({"n": obj.n, "links": [list(e) for e in obj.sorted_links()]}))
        else:
            out.write(_dump({"n": obj.n, "requests": [list(p) for p in obj.request_pairs()]}))
    elif args.format == "dot":
        g = obj if isinstance(obj, Graph) else build_graph(obj, Rule.ULF)
        owners = None
        if isinstance(obj, StrategyProfile):
            owners = {tuple(sorted(p)): p[0] for p in obj.request_pairs()}
        bridges_ = bridge_set(g)
        crit = critical_links(g)[0] if g.is_connected and g.links else frozenset()
        out.write(to_dot(g, bridges_, crit, owners))
    else:
        out.write(write_graph(obj) if isinstance(obj, Graph) else write_profile(obj))
    return 0


def cmd_oracle(args, out) -> int:
    rng = random.Random(args.seed)
    checked = mismatches = 0
    for _ in range(args.graphs):
        n = rng.randint(2, args.max_n)
        g = random_connected_graph(n, rng)
        for e in g.sorted_links():
            total = 0
            for v in g.vertices:
                fast, slow = relevance(g, e, v), relevance_naive(g, e, v)
                total += fast
                checked += 1
                if fast != slow:
                    mismatches += 1
                    out.write(f"mismatch: {write_graph(g)!r} link {link_key(e)} player {v}: {fast} != {slow}\n")
            if total != separation(g, e)[1]:
                mismatches += 1
                out.write(f"separation mismatch on link {link_key(e)}\n")
    out.write(f"{args.graphs} graphs, {checked} (link, player) pairs, {mismatches} mismatches\n")
    return 0 if mismatches == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="anarchy-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def subject(p):
        p.add_argument("--graph", help="edge-list file (owner list for ULF)")
        p.add_argument("--fixture", help=f"NAME[:PARAMS], NAME in {{{','.join(FIXTURE_NAMES)}}}")

    def game(p, table=True):
        p.add_argument("--alpha", type=_rational, required=True, help="link cost, e.g. 5/2")
        p.add_argument("--adversary", default="simple", help="simple or smart")
        if table:
            p.add_argument("--adversary-table", help="JSON {'v-w': 'p/q'} for a custom adversary")

    def fmt(p, choices=("text", "json", "dot", "csv"), default="text"):
        p.add_argument("--format", choices=choices, default=default)

    p = sub.add_parser("analyze", help="bridges, costs and verdicts for one graph")
    subject(p)
    game(p)
    p.add_argument("--rule", choices=["blf", "ulf"])
    fmt(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("check", help="test one equilibrium concept")
    subject(p)
    game(p)
    p.add_argument("--concept", type=_concept, required=True, help="ne, maxne, pne or ps")
    p.add_argument("--expect", choices=["true", "false"])
    fmt(p, ("text", "json"))
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="all equilibria on n players")
    p.add_argument("--n", type=int, required=True)
    game(p, table=False)
    p.add_argument("--concept", type=_concept, required=True)
    p.add_argument("--labeled", action="store_true", help="list labeled graphs instead of iso classes")
    p.add_argument("--include-disconnected", action="store_true")
    fmt(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("poa", help="exhaustive price of anarchy")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=_rational)
    p.add_argument("--sweep", help="comma-separated alpha grid; CSV output by default")
    p.add_argument("--adversary", default="simple")
    p.add_argument("--concept", type=_concept, required=True)
    p.add_argument("--labeled", action="store_true")
    p.add_argument("--format", choices=["text", "json", "csv"])
    p.set_defaults(func=cmd_poa)

    p = sub.add_parser("dynamics", help="improving-move dynamics towards a pairwise stable graph")
    subject(p)
    game(p)
    p.add_argument("--policy", choices=POLICIES, default="lex")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=1000)
    fmt(p, ("text", "json", "dot"))
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("construct", help="emit a named construction")
    p.add_argument("--fixture", required=True)
    fmt(p, ("text", "json", "dot"))
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("oracle", help="check fast relevance against the naive one on random graphs")
    p.add_argument("--graphs", type=int, default=1000)
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    buffer = _io.StringIO()
    try:
        status = args.func(args, buffer)
    except (UsageError, *INPUT_ERRORS) as exc:
        print(f"anarchy-lab {args.command}: error: {exc}", file=sys.stderr)
        return 2
    out.write(buffer.getvalue())
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
