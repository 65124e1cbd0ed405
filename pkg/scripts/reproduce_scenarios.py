#!/usr/bin/env python3
"""Print every headline number in one run: the three scenarios' statistics,
the distinguished vectors' membership verdicts, and the rho-eps model's
closed-form values."""

import math

from bellpoly import (
    EpsRhoParams,
    Scenario,
    chsh_closed_form,
    chsh_statistic,
    clauser_horne_statistic,
    membership,
    product_representation,
    verify_representation,
    violation_boundary,
)
from bellpoly.models import (
    concept_scenario,
    distinguish_events,
    maximal_violation_config,
    singlet_ch_vector,
    singlet_scenario,
    spin_distinguished_marginal,
    vessels_scenario,
)


def show_scenario(scenario):
    print(f"== {scenario.name}")
    print(f"   CHSH = {chsh_statistic(scenario.expectations)}")
    for name in ("CH1", "CH2", "CH3", "CH4"):
        value = clauser_horne_statistic(scenario.vector, name)
        flag = "" if -1 <= value <= 0 else "  <-- outside [-1, 0]"
        print(f"   {name} = {value}{flag}")
    verdict = membership(scenario.vector)
    where = "inside" if verdict.inside else "outside"
    print(f"   polytope: {where} C(4,S)")


def show_distinguished(name, vector):
    verdict = membership(vector)
    where = "inside" if verdict.inside else "outside"
    rep_ok = verify_representation(product_representation(vector), vector)
    print(f"== {name}: {where} C(8,S); product representation verifies: {rep_ok}")


def main():
    show_scenario(singlet_scenario(maximal_violation_config()))
    show_scenario(vessels_scenario())
    show_scenario(concept_scenario())
    print()
    show_distinguished(
        "distinguished vessels", distinguish_events(vessels_scenario())
    )
    show_distinguished(
        "distinguished 120-degree singlet",
        distinguish_events(Scenario("ch", "explicit", vector=singlet_ch_vector())),
    )
    show_distinguished("spin vector, marginal bookkeeping", spin_distinguished_marginal())
    print()
    print("== rho-eps model")
    print(f"   chsh(rho=1, eps=1) = {chsh_closed_form(EpsRhoParams(1, 1))!r}"
          f"  (2*sqrt(2) = {2 * math.sqrt(2)!r})")
    print(f"   chsh(rho=1, eps=0.5) = {chsh_closed_form(EpsRhoParams(1, 0.5))!r}")
    print(f"   chsh(rho=0, eps=0.5) = {chsh_closed_form(EpsRhoParams(0, 0.5))!r}")
    for rho in (0.0, 0.5, 1 / math.sqrt(2), 1.0):
        print(f"   violation boundary at rho={rho:.4f}: eps = {violation_boundary(rho):.6f}")


if __name__ == "__main__":
    main()
