"""Check every built relation, then measure how many one-letter mutants the check detects."""
import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import List

from totmonoid.presentation import Budget, build_R0, mutate, standard_alphabet, verify_relations
from totmonoid.shrubbery import Params


@dataclass
class Config:
    params: List[Params] = field(default_factory=lambda: [Params(1, 2, 1), Params(2, 2, 1), Params(1, 2, 2)])
    budget: Budget = field(default_factory=Budget)
    mutations: int = 20
    seeds: int = 50


def parse_params(text: str) -> List[Params]:
    return [Params(*map(int, item)) for item in text.split(",")]


def run(cfg: Config):
    for p in cfg.params:
        t0 = time.perf_counter()
        A = standard_alphabet(p)
        built = build_R0(p, A, cfg.budget)
        results = verify_relations(built.relations, A)
        failed = [r for r in results if not r.ok]
        per_family = Counter(r.family for r in built.relations)
        print(f"(n,k,r)=({p.n},{p.k},{p.r}): {len(A)} letters, {len(results)} relations, "
              f"{len(failed)} failed, {time.perf_counter() - t0:.1f}s")
        print("  per family: " + ", ".join(f"{k}:{v}" for k, v in sorted(per_family.items())))
        for note in built.truncated:
            print(f"  note: {note}")
        for r in failed:
            print(f"  {r.line()}")
        caught = Counter()
        for seed in range(cfg.seeds):
            rng = random.Random(seed)
            mutants = [mutate(rel, A, rng) for rel in rng.sample(built.relations, cfg.mutations)]
            caught[sum(not r.ok for r in verify_relations(mutants, A))] += 1
        spread = ", ".join(f"{k}/{cfg.mutations} x{v}" for k, v in sorted(caught.items()))
        print(f"  mutants caught over {cfg.seeds} seeds: {spread}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--params", type=parse_params, default=None,
                        help="comma-separated nkr triples, e.g. 121,221")
    parser.add_argument("--seeds", type=int, default=50)
    parser.add_argument("--family5-pairs", type=int, default=Budget.family5_pairs)
    args = parser.parse_args()
    cfg = Config(seeds=args.seeds, budget=Budget(family5_pairs=args.family5_pairs))
    if args.params:
        cfg.params = args.params
    run(cfg)


if __name__ == "__main__":
    main()
