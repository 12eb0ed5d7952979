import dataclasses
import random

import pytest

from minadd.criteria import (
    NECESSARY,
    SUFFICIENT,
    Certificate,
    Outcome,
    SearchConfig,
    decide,
)
from minadd.errors import CertificateInvalid, WindowTooSmall
from minadd.oracle import WindowSet, verify_complement_window
from minadd.residues import ResidueSubset
from minadd.sets import validate_canonical
from minadd.witness import (
    WitnessWindow,
    build_witness,
    verify_coverage,
    verify_local_minimality,
)

EVEN_SET = validate_canonical(2, [0], (), [1])
EVEN_CERT = Certificate(2, ResidueSubset.of(2, [0]), SUFFICIENT)


def test_even_witness_is_all_evens():
    w = build_witness(EVEN_SET, EVEN_CERT, -20, 20)
    assert w.d_elements == tuple(range(-20, 20, 2))  # evens in [-21, 19]
    # every odd target has exactly one preimage, so nothing is prunable
    for d in w.d_elements:
        assert w.provenance[d] == d + 1


def test_even_witness_verifies():
    w = build_witness(EVEN_SET, EVEN_CERT, -30, 30)
    assert verify_coverage(EVEN_SET, w).ok
    assert verify_local_minimality(EVEN_SET, w).ok


def test_deleted_element_breaks_coverage():
    w = build_witness(EVEN_SET, EVEN_CERT, -30, 30)
    victim = 0
    pruned = dataclasses.replace(
        w,
        d_elements=tuple(d for d in w.d_elements if d != victim),
        provenance={d: t for d, t in w.provenance.items() if d != victim},
    )
    report = verify_coverage(EVEN_SET, pruned)
    assert not report.ok
    assert report.first_uncovered == w.provenance[victim]


# With exceptions {1, 3} every odd target has two even preimages, so the
# candidate class genuinely overlaps and pruning has work to do.
OVERLAP_SET = validate_canonical(2, [0], (), [1, 3])
OVERLAP_CERT = Certificate(2, ResidueSubset.of(2, [0]), SUFFICIENT)


def test_redundant_element_fails_minimality():
    w = build_witness(OVERLAP_SET, OVERLAP_CERT, -40, 40)
    assert verify_local_minimality(OVERLAP_SET, w).ok
    # re-add a pruned interior element: it covers nothing privately
    pruned_out = sorted(
        set(range(-40, 41, 2)) - set(w.d_elements), key=abs
    )
    extra = next(d for d in pruned_out if -20 <= d <= 20)
    bloated = dataclasses.replace(
        w,
        d_elements=tuple(sorted(w.d_elements + (extra,))),
        provenance={**w.provenance, extra: None},
    )
    report = verify_local_minimality(OVERLAP_SET, bloated)
    assert not report.ok


def test_overlapping_pruning_is_proper_and_sound():
    w = build_witness(OVERLAP_SET, OVERLAP_CERT, -40, 40)
    full_class = [d for d in range(-43, 40) if d % 2 == 0]
    assert len(w.d_elements) < len(full_class)
    assert verify_coverage(OVERLAP_SET, w).ok
    assert verify_local_minimality(OVERLAP_SET, w).ok


def test_no_overlap_keeps_whole_class():
    # With exceptions {1, 2} at period 3 each target has a unique preimage:
    # the full candidate class is already irredundant.
    s = validate_canonical(3, [0], (), [1, 2])
    cert = Certificate(3, ResidueSubset.of(3, [0]), SUFFICIENT)
    w = build_witness(s, cert, -30, 30)
    assert w.d_elements == tuple(range(-30, 28, 3))
    assert verify_coverage(s, w).ok
    assert verify_local_minimality(s, w).ok


def test_necessary_certificate_rejected():
    cert = Certificate(2, ResidueSubset.of(2, [0]), NECESSARY)
    with pytest.raises(CertificateInvalid):
        build_witness(EVEN_SET, cert, -30, 30)


def test_invalid_certificate_rejected():
    bad = Certificate(2, ResidueSubset.of(2, [1]), SUFFICIENT)
    # C={1}: cond_a holds but it is fine either way; force re-verification
    s = validate_canonical(2, [0], (), [3])
    with pytest.raises(CertificateInvalid):
        build_witness(s, Certificate(4, ResidueSubset.of(4, [0, 1]), SUFFICIENT), -40, 40)
    del bad


def test_window_too_small():
    with pytest.raises(WindowTooSmall):
        build_witness(EVEN_SET, EVEN_CERT, 0, 5)


def test_determinism():
    a = build_witness(EVEN_SET, EVEN_CERT, -26, 26)
    b = build_witness(EVEN_SET, EVEN_CERT, -26, 26)
    assert a == b


def test_window_stability_in_interior():
    s = validate_canonical(3, [0], (), [1, 2])
    cert = Certificate(3, ResidueSubset.of(3, [0]), SUFFICIENT)
    small = build_witness(s, cert, -30, 30)
    large = build_witness(s, cert, -60, 60)
    pad = small.margins.y0_margin + small.T
    inner = range(small.lo + pad, small.hi - pad + 1)
    small_kept = {d for d in small.d_elements if d in inner}
    large_kept = {d for d in large.d_elements if d in inner}
    assert small_kept == large_kept


def test_witness_agrees_with_window_complement_check():
    w = build_witness(EVEN_SET, EVEN_CERT, -40, 40)
    pad = w.margins.y0_margin + w.T + EVEN_SET.m
    d = WindowSet(w.lo - 2, w.hi, w.d_elements)
    report = verify_complement_window(d, EVEN_SET, w.lo + pad, w.hi - pad)
    assert report.ok


def test_random_exists_instances_verify():
    rng = random.Random(9)
    from conftest import random_canonical

    checked = 0
    for _ in range(120):
        s = random_canonical(rng, 4)
        v = decide(s, SearchConfig(t_max=6))
        if v.outcome is not Outcome.EXISTS or v.certificate is None:
            continue
        T = v.certificate.T
        w = build_witness(s, v.certificate, -20 * T - 10, 20 * T + 10)
        assert verify_coverage(s, w).ok
        assert verify_local_minimality(s, w).ok
        checked += 1
    assert checked >= 10


def test_serialization_round_trip():
    w = build_witness(EVEN_SET, EVEN_CERT, -24, 24)
    again = WitnessWindow.from_dict(w.to_dict())
    assert again == w
    assert verify_coverage(EVEN_SET, again).ok
