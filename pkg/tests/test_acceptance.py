"""Acceptance criteria 1-11.

Each ``check_N`` returns ``(passed, detail)``. Under pytest every criterion is a
test and a PASS/FAIL line per criterion is printed in the terminal summary; run
this file directly to print the lines without pytest.
"""
import math
import sys
import time

import numpy as np
import pytest

from creutz_cqed import circuitqed as cq
from creutz_cqed import netlist
from creutz_cqed.dynamics import (
    evolve_driven,
    evolve_static,
    max_time_step,
    oscillation_period,
    plaquette_closed_form,
    plaquette_model,
    site_state,
    two_site_model,
)
from creutz_cqed.errors import DomainError
from creutz_cqed.floquet import DriveSpec, effective_hamiltonian, sideband_coupling, sideband_quadrature
from creutz_cqed.lattice import band_structure, build_creutz, symmetry_check
from creutz_cqed.netlist import ParseError
from creutz_cqed.topology import berry_phase, circular_distance, domain_wall_mode, edge_zero_modes, winding_number

from corpus import corpus
from oracles import bessel_integral, bisect, bloch_spectrum, creutz_dense, inverse_2x2, transmon_tuple_mp

RESULTS = {}
HALF = math.pi / 2
WM = 50.0
J0_ZERO = bisect(lambda x: bessel_integral(0, x), 2.0, 3.0)


def record(n, title, passed, detail, seconds):
    RESULTS[n] = (passed, f"AC{n:<2} {'PASS' if passed else 'FAIL'}  {title}: {detail} [{seconds:.2f} s]")
    return passed


def timed(fn):
    t0 = time.perf_counter()
    passed, detail = fn()
    return passed, detail, time.perf_counter() - t0


# 1 plaquette

def check_1():
    t0 = time.perf_counter()
    t = np.linspace(0.0, 2 * math.pi, 4001)
    traj = evolve_static(plaquette_model(), site_state(4, 0), t)
    amps, occ = plaquette_closed_form(t)
    pointwise = np.max(np.abs(traj.occupations - occ))
    p3 = evolve_static(plaquette_model(), site_state(4, 0), [HALF]).occupations[0, 2]
    s = traj.states
    p = traj.occupations
    sym = np.max(np.abs(p[:, 1] - p[:, 3]))
    ok = p[:, 1] > 1e-6
    ratio = np.max(np.abs(s[ok, 3] / s[ok, 1] - 1j))
    runtime = time.perf_counter() - t0
    passed = pointwise < 1e-9 and abs(p3 - 1) < 1e-9 and sym < 1e-9 and ratio < 1e-9 and runtime < 1
    return passed, (
        f"max|p - closed form| = {pointwise:.1e}, |p3(pi/2) - 1| = {abs(p3 - 1):.1e}, "
        f"max|p2 - p4| = {sym:.1e}, max|c4/c2 - i| = {ratio:.1e}"
    )


# 2 Floquet validity

def _driven_period(detune, order, t_final):
    model = two_site_model(1.0, (0.0, detune * WM))
    drive = DriveSpec((WM, WM), WM, (0.0, math.pi))  # 2 Omega0 / w_M = 2
    eff = effective_hamiltonian(model, drive, order=order)
    J_n = abs(eff.bond(1, 0))
    traj = evolve_driven(model, drive, site_state(2, 0), t_final, max_time_step(model, drive))
    period = oscillation_period(traj.times, traj.occupations[:, 0], max_omega=0.25 * WM)
    return J_n, period, math.pi / J_n


def check_2():
    t0 = time.perf_counter()
    J0, T0, P0 = _driven_period(0, None, 30.0)
    J1, T1, P1 = _driven_period(1, None, 12.0)
    runtime = time.perf_counter() - t0
    e0, e1 = abs(T0 / P0 - 1), abs(T1 / P1 - 1)
    passed = abs(J0 - 0.223891) < 1e-6 and abs(J1 - 0.576725) < 1e-6 and e0 < 0.03 and e1 < 0.03 and runtime < 10
    return passed, (
        f"n=0: |J0|={J0:.6f}, period {T0:.4f} vs pi/|J0| {P0:.4f} ({100 * e0:.2f}%); "
        f"n=1: |J1|={J1:.6f}, period {T1:.4f} vs {P1:.4f} ({100 * e1:.3f}%); runtime {runtime:.1f} s"
    )


# 3 dynamic localisation

def check_3():
    t0 = time.perf_counter()
    depth = WM * J0_ZERO / 2
    model = two_site_model(1.0)
    drive = DriveSpec((depth, depth), WM, (0.0, math.pi))
    traj = evolve_driven(model, drive, site_state(2, 0), 5.0, max_time_step(model, drive), times=[5.0])
    p1 = traj.occupations[0, 0]
    runtime = time.perf_counter() - t0
    return p1 >= 0.99 and runtime < 5, f"index {J0_ZERO:.6f}, p1(t=5/J) = {p1:.5f}"


# 4 Jacobi-Anger

def check_4():
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(-5, 6))
        d1, d2 = rng.uniform(0, 3 * WM, size=2)
        p1, p2 = rng.uniform(-math.pi, math.pi, size=2)
        drive = DriveSpec((d1, d2), WM, (p1, p2))
        J = float(rng.uniform(0.1, 2.0))
        err = abs(sideband_quadrature(J, drive, n) - sideband_coupling(J, drive, n).amplitude) / J
        worst = max(worst, err)
    return worst <= 1e-10, f"max |quadrature - closed form| / J = {worst:.1e} over 100 points"


# 5 flat bands

def check_5():
    b = band_structure(64, 1.0, 0.0, HALF)
    dev = max(np.max(np.abs(b.E_minus + 2)), np.max(np.abs(b.E_plus - 2)))
    flat = max(b.flatness)
    return flat < 1e-12 and dev < 1e-12, f"max|E -+ 2| = {dev:.1e}, flatness = {flat:.1e}"


# 6 spectral oracle

def check_6():
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(50):
        N = int(rng.integers(2, 17))
        td, tv = rng.uniform(-3, 3, size=2)
        phi = float(rng.uniform(-math.pi, math.pi))
        dense = np.linalg.eigvalsh(build_creutz(N, td, tv, phi, "periodic").matrix())
        bloch = np.sort(band_structure(N, td, tv, phi).energies())
        worst = max(worst, np.max(np.abs(dense - bloch)))
        # and the independently written Hamiltonian against the analytic Bloch components
        ref = np.linalg.eigvalsh(creutz_dense(N, td, tv, phi))
        worst = max(worst, np.max(np.abs(ref - np.sort(bloch_spectrum(N, td, tv, phi)))))
    return worst < 1e-10, f"max multiset deviation {worst:.1e} over 50 random ladders"


# 7 topology

def check_7():
    Rs = np.round(np.arange(-4.0, 4.0001, 0.1), 1)
    Rs = Rs[np.abs(np.abs(Rs) - 2) > 1e-9]
    bad = [R for R in Rs if abs(winding_number(1.0, R, HALF).winding) != (1 if abs(R) < 2 else 0)]
    strong = circular_distance(berry_phase(64, 1.0, 0.0, HALF), math.pi)
    trivial = circular_distance(berry_phase(64, 1.0, 3.0, HALF), 0.0)
    below = circular_distance(berry_phase(64, 1.0, 1.99, HALF), math.pi)
    above = circular_distance(berry_phase(64, 1.0, 2.01, HALF), 0.0)
    passed = not bad and max(strong, trivial, below, above) < 1e-6
    return passed, (
        f"winding wrong at {len(bad)} of {len(Rs)} ratios; Berry offsets: strong {strong:.1e}, "
        f"tv=3 {trivial:.1e}, R=1.99 from pi {below:.1e}, R=2.01 from 0 {above:.1e}"
    )


# 8 zero modes

def check_8_edges():
    H = build_creutz(8, 1.0, 0.0, HALF, "open").matrix()
    count = int(np.sum(np.abs(np.linalg.eigvalsh(H)) < 1e-10))
    left, right = edge_zero_modes(8)
    res = max(np.linalg.norm(H @ left), np.linalg.norm(H @ right))
    return count == 2 and res < 1e-12, f"{count} zero modes, max ||H eta|| = {res:.1e}"


def check_8_domain_wall():
    profile = np.where(np.arange(64) < 32, 1.0, 3.0)
    mode = domain_wall_mode(64, 1.0, profile, HALF)
    rel = abs(mode.energy) / mode.half_gap
    peak = int(np.argmax(mode.rung_density))
    passed = rel < 0.05 and abs(peak - mode.kink) <= 1 and mode.correlation > 0.95
    return passed, (
        f"|E|/gap = {rel:.1e}, peak rung {peak} (kink {mode.kink}), "
        f"tail correlation vs continuum envelope = {mode.correlation:.3f}, "
        f"fitted rates {mode.decay_rates[0]:.3f}/{mode.decay_rates[1]:.3f} vs continuum "
        f"{mode.predicted_rates[0]:.3f}/{mode.predicted_rates[1]:.3f}"
    )


def check_8():
    a, da = check_8_edges()
    b, db = check_8_domain_wall()
    return a and b, f"edges {'ok' if a else 'FAILED'} ({da}); domain wall {'ok' if b else 'FAILED'} ({db})"


# 9 symmetries

def check_9():
    rng = np.random.default_rng(9)
    trs = 0.0
    for _ in range(50):
        N = int(rng.integers(2, 33))
        td, tv = rng.uniform(-3, 3, size=2)
        trs = max(trs, symmetry_check(N, td, tv, float(rng.uniform(-math.pi, math.pi)))["trs"])
    chiral = phs = pairing = 0.0
    for _ in range(20):
        N = int(rng.integers(2, 33))
        td, tv = rng.uniform(-3, 3, size=2)
        r = symmetry_check(N, td, tv, HALF)
        chiral, phs = max(chiral, r["chiral"]), max(phs, r["phs"])
        E = np.linalg.eigvalsh(build_creutz(N, td, tv, HALF, "periodic").matrix())
        pairing = max(pairing, np.max(np.abs(E + E[::-1])))
    passed = max(trs, chiral, phs, pairing) < 1e-10
    return passed, f"TRS {trs:.1e}, chiral {chiral:.1e}, PHS {phs:.1e}, E_i + E_2N+1-i {pairing:.1e}"


# 10 circuit formulas

def check_10():
    E_C = 2.0e-24
    p = cq.transmon_params(cq.TransmonSpec(50 * E_C, charging_energy=E_C))
    eps, kerr, delta, kerr6 = (float(v) for v in transmon_tuple_mp(50))
    s = E_C / cq.HBAR
    rel = max(
        abs(p.epsilon / eps - 1),
        abs(p.kerr / (kerr * s) - 1),
        abs(p.delta_omega0 / (delta * s) - 1),
        abs(p.kerr6 / (kerr6 * s) - 1),
    )
    rng = np.random.default_rng(10)
    ident = 0.0
    oracle = 0.0
    for _ in range(200):
        cl, cr = rng.uniform(1e-15, 1e-12, size=2)
        cj = float(rng.choice([0.0, rng.uniform(0, 1e-12)]))
        inv = cq.capacitance_inverse(cl, cr, cj)
        ident = max(ident, np.max(np.abs(inv @ cq.capacitance_matrix(cl, cr, cj) - np.eye(2))))
        ref = inverse_2x2(cl + cj, -cj, -cj, cr + cj)
        oracle = max(oracle, np.max(np.abs(inv - ref) / np.abs(ref).max()))
    passed = rel < 1e-12 and ident < 1e-12
    return passed, f"max rel. error vs 40-digit oracle {rel:.1e}; max|C^-1 C - 1| = {ident:.1e} (vs 2x2 oracle {oracle:.1e})"


# 11 parser robustness

def _fuzz_inputs(rng, count):
    alphabet = np.frombuffer(b"[]=#. \t\n\r+-eE_0123456789abcdefghijklmnopqrstuvwxyzsitecouplingladder\xc3\xa9\xff\x00", dtype=np.uint8)
    for i in range(count):
        size = int(rng.integers(0, 80))
        if i % 2:
            yield rng.integers(0, 256, size=size, dtype=np.uint8).tobytes()
        else:
            yield alphabet[rng.integers(0, alphabet.size, size=size)].tobytes()


def check_11():
    rng = np.random.default_rng(11)
    outcomes = {"document": 0, "parse error": 0, "validation error": 0}
    crashes = []
    for data in _fuzz_inputs(rng, 100_000):
        try:
            doc = netlist.parse(data)
            outcomes["document"] += 1
            try:
                netlist.validate(doc)
            except DomainError:
                outcomes["validation error"] += 1
        except ParseError:
            outcomes["parse error"] += 1
        except Exception as exc:  # anything else is an abort
            crashes.append((data, repr(exc)))
    fixpoints = 0
    docs = corpus()
    for text in docs:
        doc = netlist.parse(text)
        once = netlist.dump(doc)
        fixpoints += netlist.parse(once) == doc and netlist.dump(netlist.parse(once)) == once
    passed = not crashes and fixpoints == len(docs) == 50
    return passed, f"100000 fuzz inputs, {len(crashes)} aborts {outcomes}; round-trip fixpoint {fixpoints}/{len(docs)}"


TITLES = {
    1: ("plaquette chiral transfer", check_1),
    2: ("Floquet reduction validity", check_2),
    3: ("dynamic localisation", check_3),
    4: ("Jacobi-Anger oracle", check_4),
    5: ("flat bands", check_5),
    6: ("spectral oracle", check_6),
    7: ("topology", check_7),
    8: ("zero modes", check_8),
    9: ("symmetries", check_9),
    10: ("circuit formulas", check_10),
    11: ("parser robustness", check_11),
}


def run_criterion(n):
    title, fn = TITLES[n]
    passed, detail, seconds = timed(fn)
    return record(n, title, passed, detail, seconds), RESULTS[n][1]


@pytest.mark.parametrize("n", sorted(TITLES))
def test_acceptance(n):
    passed, line = run_criterion(n)
    print(line)
    assert passed, line


if __name__ == "__main__":
    ok = True
    for n in sorted(TITLES):
        passed, line = run_criterion(n)
        print(line, flush=True)
        ok &= passed
    sys.exit(0 if ok else 1)
