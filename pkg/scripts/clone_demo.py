#!/usr/bin/env python3
"""Clone attempts on the basis states and the equal-superposition state,
showing why only basis states copy and what the failure leaves behind."""

from entlogic.quantum import cat, is_separable, one, try_clone, zero


def _amp(a: complex) -> str:
    if abs(a.imag) <= 1e-12:
        return f"{a.real:.4g}"
    return f"({a.real:.4g}{a.imag:+.4g}i)"


def describe(state) -> str:
    labels = ("|0>", "|1>") if state.num_qubits == 1 else ("|00>", "|01>", "|10>", "|11>")
    terms = [f"{_amp(a)}{l}" for a, l in zip(state.amplitudes, labels) if abs(a) > 1e-12]
    return " + ".join(terms)


def main() -> None:
    for name, psi in (("zero", zero()), ("one", one()), ("cat", cat())):
        outcome = try_clone(psi)
        print(f"--- clone {name}: {describe(psi)}")
        print(f"produced : {describe(outcome.produced)}")
        print(f"intended : {describe(outcome.intended)}")
        print(f"success  : {outcome.success} "
              f"(fidelity {outcome.fidelity_with_intended:.6g})")
        print(f"separable: {is_separable(outcome.produced)}")
        print()


if __name__ == "__main__":
    main()
