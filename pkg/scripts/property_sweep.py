"""Count failures of the core laws over random instances, per parameter set."""
import argparse
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List

from totmonoid.endo import endo_compose, endo_eq, phi, psi
from totmonoid.sampling import random_endo, random_root_system, random_tot, re_presented
from totmonoid.shrubbery import Params
from totmonoid.tot import compose, deferment, depth_of, root_system_depth, tot_eq, tot_eq_flat


@dataclass
class SweepConfig:
    params: List[Params] = field(default_factory=lambda: [
        Params(1, 2, 1), Params(2, 2, 1), Params(1, 3, 2), Params(1, 2, 2)])
    instances: int = 100
    split: float = 0.5
    seed: int = 0


def laws(rng: random.Random, p: Params, split: float) -> Dict[str, Callable[[], bool]]:
    def tot():
        return random_tot(rng, p, split=split)

    def deferred():
        f, g, w = tot(), tot(), random_root_system(rng, p)
        fw = deferment(f, w)
        return (depth_of(fw) <= depth_of(f) + root_system_depth(w)
                and tot_eq(deferment(compose(f, g), w), compose(fw, deferment(g, w))))

    def representation():
        f = tot()
        g = re_presented(rng, f)
        return tot_eq(f, g) and tot_eq_flat(f, g)

    def phi_psi():
        f = tot()
        return tot_eq(psi(phi(f)), f)

    def psi_phi():
        e = random_endo(rng, p)
        return endo_eq(phi(psi(e)), e)

    def homomorphism():
        f, g = tot(), tot()
        return endo_eq(phi(compose(f, g)), endo_compose(phi(f), phi(g)))

    def oracles():
        f, g = tot(), tot()
        return tot_eq(f, g) == tot_eq_flat(f, g)

    return {"psi.phi": phi_psi, "phi.psi": psi_phi, "homomorphism": homomorphism,
            "re-presented": representation, "oracles agree": oracles, "deferment": deferred}


def run(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    names = list(laws(rng, cfg.params[0], cfg.split))
    print("params   " + "".join(f"{n:>14}" for n in names) + "   seconds")
    for p in cfg.params:
        t0 = time.perf_counter()
        checks = laws(rng, p, cfg.split)
        fails = [sum(not checks[n]() for _ in range(cfg.instances)) for n in names]
        print(f"{p.n},{p.k},{p.r}    " + "".join(f"{x:>14}" for x in fails)
              + f"   {time.perf_counter() - t0:7.1f}")
    print(f"(failures out of {cfg.instances} instances each)")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=100)
    parser.add_argument("--split", type=float, default=0.5, help="chance of splitting a cell")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--params", default=None, help="comma-separated nkr triples, e.g. 121,231")
    args = parser.parse_args()
    cfg = SweepConfig(instances=args.instances, split=args.split, seed=args.seed)
    if args.params:
        cfg.params = [Params(*map(int, t)) for t in args.params.split(",")]
    run(cfg)


if __name__ == "__main__":
    main()
