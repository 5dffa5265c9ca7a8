"""``tnorm`` command line interface."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

from tnorm.corpus import load_lexicon, rewrite_line, split_corpus
from tnorm.embeddings import EmbeddingStore, load_embeddings
from tnorm.evaluation import evaluate, load_gold, threshold_sweep, write_sweep_csv
from tnorm.matcher import MatchParams, MatchResult, match_all
from tnorm.phonetics import DEFAULT_MAX_CODE_LEN, encode
from tnorm.similarity import (SimilarityWeights, build_component_matrix, combine,
                              component_triple)
from tnorm.textsim import normalize_word
from tnorm.tuner import GridSpec, TunedParams, grid_search, refine, run_experiment

log = logging.getLogger("tnorm")

# rows x columns above which match/normalize build the matrix in OOV chunks
MAX_PAIRS = 10_000_000


def _configure_threads() -> None:
    value = os.environ.get("TNORM_THREADS")
    if not value:
        return
    import numba

    try:
        n = int(value)
    except ValueError:
        raise ValueError(f"TNORM_THREADS must be an integer, got {value!r}") from None
    numba.set_num_threads(max(1, min(n, numba.config.NUMBA_NUM_THREADS)))


def _weights(text: str) -> SimilarityWeights:
    try:
        return SimilarityWeights.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _open_out(path: Optional[str]):
    return open(path, "w", encoding="utf-8", newline="") if path and path != "-" else sys.stdout


def _read_words(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        words = [normalize_word(line) for line in fh if line.strip() and not line.startswith("#")]
    return list(dict.fromkeys(w for w in words if w))


def _match_in_chunks(oov: list[str], iv: list[str], store: EmbeddingStore,
                     params: MatchParams, max_code_len: int) -> MatchResult:
    rows = max(1, MAX_PAIRS // max(1, len(iv)))
    matches: dict = {}
    for start in range(0, len(oov), rows):
        matrix = build_component_matrix(oov[start:start + rows], iv, store, max_code_len)
        matches.update(match_all(matrix, params).matches)
    return MatchResult(matches, k=params.k)


def cmd_encode(args) -> int:
    codes = encode(args.word, args.max_code_len)
    print(f"primary\t{codes.primary}")
    print(f"alternate\t{codes.alternate if codes.alternate is not None else ''}")
    return 0


def cmd_sim(args) -> int:
    store = load_embeddings(args.embeddings)
    a, b = normalize_word(args.w1), normalize_word(args.w2)
    triple = component_triple(a, b, store, args.max_code_len)

    def fmt(v):
        return "undefined" if v is None else f"{v:.6f}"

    print(f"S_c\t{fmt(triple.contextual)}")
    print(f"S_p\t{fmt(triple.phonetic)}")
    print(f"S_s\t{fmt(triple.string)}")
    print(f"S\t{combine(triple, args.weights):.6f}")
    return 0


def cmd_match(args) -> int:
    lexicon = load_lexicon(args.lexicon)
    store = load_embeddings(args.embeddings)
    oov = _read_words(args.oov)
    in_lex = [w for w in oov if w in lexicon]
    if in_lex:
        log.warning("%d words of %s are in the lexicon and were skipped", len(in_lex), args.oov)
    oov = [w for w in oov if w not in lexicon]
    if not oov:
        raise ValueError(f"no OOV words in {args.oov}")
    params = MatchParams(args.weights, args.t, args.k)
    result = _match_in_chunks(oov, sorted(lexicon), store, params, args.max_code_len)
    out = _open_out(args.output)
    try:
        result.write_tsv(out)
    finally:
        if out is not sys.stdout:
            out.close()
    log.info("matched %d of %d OOV words", result.matched_count, len(result))
    return 0


def cmd_normalize(args) -> int:
    lexicon = load_lexicon(args.lexicon)
    store = load_embeddings(args.embeddings)
    with open(args.params, encoding="utf-8") as fh:
        tuned = TunedParams.from_json(json.load(fh))
    lines = sys.stdin.readlines()
    split = split_corpus(lines, lexicon)
    best: dict[str, str] = {}
    if split.oov:
        result = _match_in_chunks(sorted(split.oov), sorted(lexicon), store,
                                  tuned.match_params(), args.max_code_len)
        best = result.best()
    for line in lines:
        sys.stdout.write(rewrite_line(line, lambda tok: best.get(tok, tok)))
    return 0


def _gold_matrix_builder(lexicon, store, max_code_len):
    iv = sorted(lexicon)

    def build(oov_words):
        return build_component_matrix(list(oov_words), iv, store, max_code_len)

    return build


def cmd_tune(args) -> int:
    gold = load_gold(args.gold)
    if not len(gold):
        raise ValueError(f"no usable mappings in {args.gold}")
    lexicon = load_lexicon(args.lexicon)
    store = load_embeddings(args.embeddings)
    unreachable = sum(1 for iv in gold.mappings.values() if iv not in lexicon)
    if unreachable:
        log.warning("%d gold IV words are missing from the lexicon", unreachable)
    matrix = _gold_matrix_builder(lexicon, store, args.max_code_len)(sorted(gold.oov_words()))
    tuned = grid_search(matrix, gold, GridSpec.with_step(args.step), args.seed)
    if args.refine:
        tuned = refine(matrix, gold, tuned)
    out = _open_out(args.output)
    try:
        json.dump(tuned.to_json(), out, indent=2)
        out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_eval(args) -> int:
    gold = load_gold(args.gold)
    with open(args.pred, encoding="utf-8") as fh:
        result = MatchResult.read_tsv(fh, args.pred)
    report = evaluate(result, gold)
    json.dump(report.to_dict(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_sweep(args) -> int:
    gold = load_gold(args.gold)
    lexicon = load_lexicon(args.lexicon)
    store = load_embeddings(args.embeddings)
    t_values = _t_axis(args.t_from, args.t_to, args.t_step)
    matrix = _gold_matrix_builder(lexicon, store, args.max_code_len)(sorted(gold.oov_words()))
    rows = threshold_sweep(matrix, args.weights, gold, t_values)
    out = _open_out(args.output)
    try:
        write_sweep_csv(rows, out)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _t_axis(start: float, stop: float, step: float) -> list[float]:
    if step <= 0 or stop < start:
        raise ValueError("need --t-step > 0 and --t-to >= --t-from")
    n = int(round((stop - start) / step))
    return [round(start + i * step, 10) for i in range(n + 1)]


def cmd_experiment(args) -> int:
    gold = load_gold(args.gold)
    gold2 = load_gold(args.gold2) if args.gold2 else None
    lexicon = load_lexicon(args.lexicon)
    store = load_embeddings(args.embeddings)
    report = run_experiment(args.protocol, gold, gold2,
                            _gold_matrix_builder(lexicon, store, args.max_code_len),
                            seed=args.seed, grid=GridSpec.with_step(args.step),
                            refined=args.refine)
    out = _open_out(args.output)
    try:
        json.dump(report.to_json(), out, indent=2)
        out.write("\n")
    finally:
        if out is not sys.stdout:
            out.close()
    log.info("%s", report.format_row())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tnorm", description="Optimized nearest-neighbour "
                                     "normalization of out-of-vocabulary words.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, lexicon=True, embeddings=True):
        if lexicon:
            p.add_argument("--lexicon", required=True, help="IV word list, one per line")
        if embeddings:
            p.add_argument("--embeddings", required=True, help="text-format word vectors")
        p.add_argument("--max-code-len", type=int, default=DEFAULT_MAX_CODE_LEN,
                       help="Double Metaphone code length cap (default 4)")

    p = sub.add_parser("encode", help="print Double Metaphone codes of a word")
    p.add_argument("word")
    p.add_argument("--max-code-len", type=int, default=DEFAULT_MAX_CODE_LEN)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("sim", help="component and combined similarity of two words")
    p.add_argument("w1")
    p.add_argument("w2")
    common(p, lexicon=False)
    p.add_argument("--weights", type=_weights, default=SimilarityWeights(1.0, 1.0, 1.0))
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("match", help="match OOV words to lexicon words (predictions TSV)")
    common(p)
    p.add_argument("--oov", required=True, help="OOV word list, one per line")
    p.add_argument("--weights", type=_weights, required=True, help="wc,wp,ws")
    p.add_argument("-t", type=float, required=True, help="similarity threshold in (0, 1)")
    p.add_argument("-k", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("normalize", help="normalize running text from stdin")
    common(p)
    p.add_argument("--params", required=True, help="JSON written by `tnorm tune`")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("tune", help="grid-search weights and threshold on gold mappings")
    common(p)
    p.add_argument("--gold", required=True)
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--refine", action="store_true", help="add a 0.01-step pass around the optimum")
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tune)

    p = sub.add_parser("eval", help="precision/recall/F of a predictions TSV")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="metrics over a range of thresholds (CSV)")
    common(p)
    p.add_argument("--gold", required=True)
    p.add_argument("--weights", type=_weights, required=True)
    p.add_argument("--t-from", type=float, required=True)
    p.add_argument("--t-to", type=float, required=True)
    p.add_argument("--t-step", type=float, required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("experiment", help="run a train/test protocol (cv2, split20, cross)")
    common(p)
    p.add_argument("--protocol", choices=["cv2", "split20", "cross"], required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--gold2", help="second gold set, tuning data for --protocol cross")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--refine", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(levelname)s: %(message)s", stream=sys.stderr)
    if args.command == "experiment" and (args.protocol == "cross") != bool(args.gold2):
        parser.error("--gold2 is required for --protocol cross and not allowed otherwise")
    try:
        _configure_threads()
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"tnorm: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
