"""Quantizer, frame assembly, and the end-to-end mux/demux chain."""

from __future__ import annotations

import numpy as np
import pytest

from wavemux import (
    BadLength,
    BadResolution,
    Channel,
    DuplicateChannel,
    MissingChannel,
    MuxedSignal,
    OffGrid,
    PayloadLengthMismatch,
    RatePlan,
    ShapeMismatch,
    TributaryPayload,
    allocate_bands,
    assemble_frame,
    demux,
    dequantize_samples,
    disassemble_frame,
    enumerate_compositions,
    make_wavelet_system,
    mux,
    quantize_words,
)
from wavemux.mra import CoefficientFrame
from oracles import quantizer_levels, random_scaling_filter


@pytest.fixture(scope="module")
def haar():
    return make_wavelet_system("haar")


@pytest.fixture(scope="module")
def db4():
    return make_wavelet_system("db4")


def make_plan(n, j, rates, r=64000, b=8):
    return RatePlan(n, j, r, b, tuple(Channel(f"ch{i}", rate) for i, rate in enumerate(rates)))


def four_channel_plan(b=8):
    # four basic-rate channels in a 4-sample frame: one sample each
    return make_plan(4, 2, [64000] * 4, b=b)


class TestQuantizer:
    def test_one_bit_mapping(self):
        np.testing.assert_allclose(quantize_words("10", 1), [0.5, -0.5])

    def test_two_bit_mapping(self):
        np.testing.assert_allclose(quantize_words("00011011", 2), [-0.75, -0.25, 0.25, 0.75])

    def test_eight_bit_midpoint_word(self):
        # word 128 sits one half-step above zero: (2*128 + 1 - 256) / 256
        np.testing.assert_allclose(quantize_words(format(128, "08b"), 8), [1.0 / 256.0])

    def test_levels_fill_open_unit_interval(self):
        for b in (1, 2, 5, 12):
            levels = quantize_words("".join(format(w, f"0{b}b") for w in range(1 << b)), b)
            np.testing.assert_allclose(levels, quantizer_levels(b), atol=1e-15)
            assert levels.min() == -1.0 + 1.0 / (1 << b)
            assert levels.max() == 1.0 - 1.0 / (1 << b)
            assert np.all(np.diff(levels) == pytest.approx(2.0 ** (1 - b)))

    def test_bad_length(self):
        with pytest.raises(BadLength):
            quantize_words("101", 2)
        with pytest.raises(BadLength):
            quantize_words("10x0", 2)

    def test_bad_resolution(self):
        with pytest.raises(BadResolution):
            quantize_words("10", 0)
        with pytest.raises(BadResolution):
            quantize_words("0" * 25, 25)
        with pytest.raises(BadResolution):
            dequantize_samples([0.5], 30)

    def test_decode_with_small_perturbation(self):
        assert dequantize_samples([0.5 + 1e-12, -0.5], 1) == "10"
        assert dequantize_samples([-0.75, 0.75], 2) == "0011"

    def test_zero_is_off_grid_at_two_bits(self):
        # 0.0 sits exactly between the -0.25 and +0.25 levels, outside the
        # guard band of 1/8
        with pytest.raises(OffGrid):
            dequantize_samples([0.0], 2)

    def test_guard_band_boundary(self):
        b = 3
        guard = 2.0 ** -(b + 1)
        level = quantizer_levels(b)[5]
        assert dequantize_samples([level + guard * 0.999], b) == format(5, "03b")
        with pytest.raises(OffGrid):
            dequantize_samples([level + guard * 1.001], b)

    def test_out_of_range_is_off_grid(self):
        with pytest.raises(OffGrid):
            dequantize_samples([1.2], 8)

    @pytest.mark.parametrize("b", [1, 2, 4, 8, 12, 24])
    def test_round_trip_under_guard_noise(self, b):
        rng = np.random.default_rng(b)
        bits = "".join(map(str, rng.integers(0, 2, 60 * b)))
        v = quantize_words(bits, b)
        noise = rng.uniform(-1, 1, v.size) * (2.0 ** -(b + 2))
        assert dequantize_samples(v + noise, b) == bits


class TestAssembleFrame:
    def test_canonical_four_channel_layout(self, haar):
        plan = four_channel_plan()
        tree = allocate_bands(plan)
        a, b, c, d = 0.125, -0.375, 0.625, -0.875
        payloads = [
            TributaryPayload.from_samples(f"ch{i}", [v]) for i, v in enumerate((a, b, c, d))
        ]
        frame = assemble_frame(plan, tree, payloads)
        np.testing.assert_allclose(frame.details[0], [a, b])  # phases 0, 1
        np.testing.assert_allclose(frame.details[1], [c])
        np.testing.assert_allclose(frame.approx, [d])

    def test_leaf_channel_samples_copied_verbatim(self, haar):
        plan = make_plan(64, 3, [256000, 256000])
        tree = allocate_bands(plan)
        rng = np.random.default_rng(3)
        fast = rng.uniform(-1, 1, 32)
        leaf = rng.uniform(-1, 1, 32)
        frame = assemble_frame(
            plan,
            tree,
            [
                TributaryPayload.from_samples("ch0", fast),
                TributaryPayload.from_samples("ch1", leaf),
            ],
        )
        assert frame.depth == 1
        np.testing.assert_array_equal(frame.approx, leaf)
        np.testing.assert_array_equal(frame.details[0], fast)

    def test_short_payload_rejected(self):
        plan = four_channel_plan()
        tree = allocate_bands(plan)
        payloads = [TributaryPayload.from_samples(f"ch{i}", [0.0]) for i in range(3)]
        payloads.append(TributaryPayload.from_samples("ch3", [0.0, 0.0]))
        with pytest.raises(PayloadLengthMismatch):
            assemble_frame(plan, tree, payloads)

    def test_missing_and_duplicate_payloads(self):
        plan = four_channel_plan()
        tree = allocate_bands(plan)
        short = [TributaryPayload.from_samples(f"ch{i}", [0.0]) for i in range(3)]
        with pytest.raises(MissingChannel):
            assemble_frame(plan, tree, short)
        doubled = short + [
            TributaryPayload.from_samples("ch2", [0.0]),
            TributaryPayload.from_samples("ch3", [0.0]),
        ]
        with pytest.raises(DuplicateChannel):
            assemble_frame(plan, tree, doubled)

    def test_digital_payloads_quantized_in_place(self):
        plan = four_channel_plan(b=2)
        tree = allocate_bands(plan)
        payloads = [TributaryPayload.from_bits(f"ch{i}", bits) for i, bits in
                    enumerate(("00", "01", "10", "11"))]
        frame = assemble_frame(plan, tree, payloads)
        np.testing.assert_allclose(frame.details[0], [-0.75, -0.25])
        np.testing.assert_allclose(frame.details[1], [0.25])
        np.testing.assert_allclose(frame.approx, [0.75])


class TestDisassembleFrame:
    def test_inverse_of_assemble(self):
        plan = four_channel_plan()
        tree = allocate_bands(plan)
        values = (0.1, 0.2, 0.3, 0.4)
        payloads = [TributaryPayload.from_samples(f"ch{i}", [v]) for i, v in enumerate(values)]
        out = disassemble_frame(assemble_frame(plan, tree, payloads), tree)
        assert [(p.id, p.samples.tolist()) for p in out] == [
            (f"ch{i}", [v]) for i, v in enumerate(values)
        ]

    def test_phase_slot_reads_interleaved_indices(self):
        plan = make_plan(64, 3, [256000, 64000, 64000, 64000, 64000])
        tree = allocate_bands(plan)
        frame = assemble_frame(
            plan,
            tree,
            [TributaryPayload.from_samples("ch0", np.arange(32.0) / 32.0)]
            + [TributaryPayload.from_samples(f"ch{i}", np.full(8, i / 8.0)) for i in (1, 2, 3, 4)],
        )
        # ch2 sits at band-2 decimation 2 phase 1: indices 1, 3, 5, ...
        np.testing.assert_array_equal(frame.details[1][1::2], np.full(8, 2 / 8.0))
        recovered = {p.id: p.samples for p in disassemble_frame(frame, tree)}
        np.testing.assert_array_equal(recovered["ch2"], np.full(8, 2 / 8.0))

    def test_zero_frame_gives_zero_payloads(self):
        plan = four_channel_plan()
        tree = allocate_bands(plan)
        frame = CoefficientFrame((np.zeros(2), np.zeros(1)), np.zeros(1))
        assert all(not p.samples.any() for p in disassemble_frame(frame, tree))

    def test_depth_mismatch_rejected(self):
        plan = four_channel_plan()
        tree = allocate_bands(plan)
        frame = CoefficientFrame((np.zeros(2),), np.zeros(2))  # depth 1, tree wants 2
        with pytest.raises(ShapeMismatch):
            disassemble_frame(frame, tree)


class TestMux:
    def test_scale_leaf_unit_sample(self, haar):
        plan = four_channel_plan()
        payloads = [
            TributaryPayload.from_samples(f"ch{i}", [1.0 if i == 3 else 0.0]) for i in range(4)
        ]
        signal = mux(plan, haar, payloads)
        np.testing.assert_allclose(signal.samples, [0.5, 0.5, 0.5, 0.5], atol=1e-15)

    def test_deep_detail_unit_sample(self, haar):
        plan = four_channel_plan()
        payloads = [
            TributaryPayload.from_samples(f"ch{i}", [1.0 if i == 2 else 0.0]) for i in range(4)
        ]
        signal = mux(plan, haar, payloads)
        np.testing.assert_allclose(signal.samples, [0.5, 0.5, -0.5, -0.5], atol=1e-15)

    def test_all_zero_payloads(self, db4):
        plan = four_channel_plan()
        payloads = [TributaryPayload.from_samples(f"ch{i}", [0.0]) for i in range(4)]
        assert not mux(plan, db4, payloads).samples.any()

    def test_linearity_in_sample_mode(self, db4):
        plan = make_plan(32, 3, [256000, 128000, 64000, 64000])
        rng = np.random.default_rng(9)
        counts = [16, 8, 4, 4]
        pa = [TributaryPayload.from_samples(f"ch{i}", rng.uniform(-1, 1, c)) for i, c in enumerate(counts)]
        pb = [TributaryPayload.from_samples(f"ch{i}", rng.uniform(-1, 1, c)) for i, c in enumerate(counts)]
        alpha, beta = 0.6, -1.1
        mixed = [
            TributaryPayload.from_samples(a.id, alpha * a.samples + beta * b.samples)
            for a, b in zip(pa, pb)
        ]
        lhs = mux(plan, db4, mixed).samples
        rhs = alpha * mux(plan, db4, pa).samples + beta * mux(plan, db4, pb).samples
        np.testing.assert_allclose(lhs, rhs, atol=1e-10)

    def test_parseval_bridge(self, db4):
        plan = make_plan(64, 3, [256000, 128000, 64000, 64000])
        rng = np.random.default_rng(21)
        # channel sample counts: 32, 16, 8, 8
        payloads = [
            TributaryPayload.from_samples("ch0", rng.uniform(-1, 1, 32)),
            TributaryPayload.from_samples("ch1", rng.uniform(-1, 1, 16)),
            TributaryPayload.from_samples("ch2", rng.uniform(-1, 1, 8)),
            TributaryPayload.from_samples("ch3", rng.uniform(-1, 1, 8)),
        ]
        signal = mux(plan, db4, payloads).samples
        coeff_energy = sum(float(np.dot(p.samples, p.samples)) for p in payloads)
        rel = abs(float(np.dot(signal, signal)) - coeff_energy) / coeff_energy
        assert rel <= 1e-9


class TestDemux:
    def test_recovers_scale_leaf(self, haar):
        plan = four_channel_plan()
        out = demux(plan, haar, np.array([0.5, 0.5, 0.5, 0.5]), digital=False)
        got = {p.id: p.samples for p in out}
        np.testing.assert_allclose(
            [got["ch0"], got["ch1"], got["ch2"], got["ch3"]],
            [[0.0], [0.0], [0.0], [1.0]],
            atol=1e-12,
        )

    def test_round_trip_sample_mode(self, db4):
        plan = make_plan(64, 3, [256000, 128000, 64000, 64000])
        rng = np.random.default_rng(33)
        counts = [32, 16, 8, 8]
        payloads = [
            TributaryPayload.from_samples(f"ch{i}", rng.uniform(-1, 1, c))
            for i, c in enumerate(counts)
        ]
        out = demux(plan, db4, mux(plan, db4, payloads), digital=False)
        for sent, got in zip(payloads, out):
            assert sent.id == got.id
            np.testing.assert_allclose(got.samples, sent.samples, atol=1e-10)

    def test_wrong_length_rejected(self, haar):
        plan = four_channel_plan()
        with pytest.raises(ShapeMismatch):
            demux(plan, haar, np.zeros(8))

    def test_digest_mismatch_rejected(self, haar):
        plan = four_channel_plan()
        other = make_plan(4, 2, [128000, 64000, 64000])
        payloads = [TributaryPayload.from_samples(f"ch{i}", [0.0]) for i in range(4)]
        signal = mux(plan, haar, payloads)
        with pytest.raises(ShapeMismatch):
            demux(other, haar, signal)

    def test_wrong_wavelet_flags_off_grid_with_channel(self, haar, db4):
        plan = make_plan(64, 3, [64000] * 8)
        rng = np.random.default_rng(55)
        payloads = [
            TributaryPayload.from_bits(ch.id, "".join(map(str, rng.integers(0, 2, 64))))
            for ch in plan.channels
        ]
        signal = mux(plan, db4, payloads)
        with pytest.raises(OffGrid, match="channel"):
            demux(plan, haar, MuxedSignal(signal.samples))  # digest stripped

    @pytest.mark.parametrize("wavelet", ["haar", "db4"])
    @pytest.mark.parametrize("j", [1, 2, 3, 4])
    def test_digital_round_trip_every_composition(self, wavelet, j):
        system = make_wavelet_system(wavelet)
        n = 1 << (j + 3)
        rng = np.random.default_rng(1000 * j)
        for comp in enumerate_compositions(j):
            rates = []
            for tier, count in enumerate(comp, start=1):
                rates.extend([64000 << (j - tier)] * count)
            plan = make_plan(n, j, rates)
            payloads = []
            for ch in plan.channels:
                nbits = (ch.rate // 64000) * (n >> j) * plan.resolution
                payloads.append(
                    TributaryPayload.from_bits(ch.id, "".join(map(str, rng.integers(0, 2, nbits))))
                )
            recovered = demux(plan, system, mux(plan, system, payloads))
            assert [(p.id, p.bits) for p in recovered] == [(p.id, p.bits) for p in payloads]

    def test_round_trip_with_random_lattice_wavelet(self):
        rng = np.random.default_rng(77)
        system = make_wavelet_system(random_scaling_filter(rng, 3), name="lattice6")
        plan = make_plan(64, 3, [256000, 128000, 64000, 64000])
        payloads = []
        for ch, count in zip(plan.channels, (32, 16, 8, 8)):
            payloads.append(
                TributaryPayload.from_bits(ch.id, "".join(map(str, rng.integers(0, 2, count * 8))))
            )
        recovered = demux(plan, system, mux(plan, system, payloads))
        assert [(p.id, p.bits) for p in recovered] == [(p.id, p.bits) for p in payloads]


def test_payload_requires_exactly_one_mode():
    with pytest.raises(ValueError):
        TributaryPayload(id="x")
    with pytest.raises(ValueError):
        TributaryPayload(id="x", bits="01", samples=np.zeros(1))
