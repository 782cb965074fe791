"""Print the baker's map and the generator displays in matrix text."""
from dataclasses import dataclass

from totmonoid.rel import (
    LabeledGenSet, depth_rel, from_pair, gen_pi0, gen_pi_w, gen_U, rel_deferment, rel_mul,
    render_arrow, render_pair,
)
from totmonoid.shrubbery import Params, shrubbery


@dataclass(frozen=True)
class Config:
    params: Params = Params(2, 2, 1)
    defer_to: tuple = (shrubbery(0, "0", "01"),)


def bakers(p: Params):
    left = LabeledGenSet(p, {shrubbery(0, "0", ""): 0, shrubbery(0, "1", ""): 1})
    right = LabeledGenSet(p, {shrubbery(0, "", "0"): 0, shrubbery(0, "", "1"): 1})
    root = LabeledGenSet(p, {shrubbery(0, "", ""): 0})
    return from_pair(left, right), from_pair(left, root)


def main(cfg: Config = Config()):
    f, g = bakers(cfg.params)
    fg = rel_mul(f, g)
    for name, x in (("f", f), ("g", g), ("fg", fg)):
        print(f"{name:<4} depth {depth_rel(x)}  {render_arrow(x)}")
    w = "; ".join(map(str, cfg.defer_to))
    print(f"f deferred to [{w}]  {render_arrow(rel_deferment(f, cfg.defer_to))}")
    print()
    print(f"U at (2,3,2)        {render_pair(*gen_U(Params(2, 3, 2)).pair)}")
    print(f"pi(1,(1)) at (1,2,3)  {render_pair(*gen_pi_w(shrubbery(1, '1'), Params(1, 2, 3)).pair)}")
    print(f"pi0 at (1,3,2)      {render_pair(*gen_pi0(Params(1, 3, 2)).pair)}")


if __name__ == "__main__":
    main()
