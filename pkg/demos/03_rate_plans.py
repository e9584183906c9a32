"""Rate plans: admissible channel mixes, frame numerology, allocation.

A J-scale frame carries 2^J basic-rate units. This script enumerates the
ways to fill one, works through classic telephony-rate configurations,
and prints the deterministic slot assignment for a mixed-rate plan.
"""

from wavemux import (
    Channel,
    RatePlan,
    aggregate_rate,
    allocate_bands,
    enumerate_compositions,
    frame_time,
    iter_band_slots,
    tree_leaf,
    tree_to_json,
    tributary_rates,
    validate_plan,
)

# ---------------------------------------------------------------------
# All ways to fill a 3-scale frame. n_j counts channels at rate
# 2^(J-j) R; each row satisfies sum n_j 2^(J-j) = 2^J.
# ---------------------------------------------------------------------
print("rate tiers for J=3, R=64 kbps:", tributary_rates(3, 64000))
for i, comp in enumerate(enumerate_compositions(3), start=1):
    print(f"  mix {i}: {comp}")

# ---------------------------------------------------------------------
# Frame numerology for voice-grade channels (64 kbps basic rate).
# A 512-sample, 3-scale frame with 8-bit words lasts 8 ms; shrinking the
# frame to 64 samples shortens it to 1 ms at the same rates.
# ---------------------------------------------------------------------
def equal_rate(n, j, b):
    return RatePlan(n, j, 64000, b, tuple(Channel(f"u{i}", 64000) for i in range(1 << j)))

for n, j, b in ((512, 3, 8), (64, 3, 8)):
    plan = equal_rate(n, j, b)
    t = frame_time(plan)
    print(f"\nN={n} J={j} B={b}: frame {t} s = {float(t) * 1e3:g} ms,"
          f" aggregate {aggregate_rate(plan)} bps")

# Four different word sizes that all produce a 125 us frame at
# 2.048 Mbps, the primary-rate telephony format.
print()
for n, b in ((256, 1), (128, 2), (64, 4), (32, 8)):
    plan = equal_rate(n, 5, b)
    t = frame_time(plan)
    print(f"N={n:4d} J=5 B={b}: frame {t} s, aggregate {aggregate_rate(plan)} bps")

# ---------------------------------------------------------------------
# Allocation for a mixed plan: one 256 kbps channel plus four 64 kbps
# ones. The fast channel takes the whole finest band, two slow channels
# time-share band 2 on opposite phases, and the last one rides the
# deepest approximation untransformed.
# ---------------------------------------------------------------------
plan = RatePlan(64, 3, 64000, 8, (
    Channel("video", 256000),
    Channel("voice1", 64000),
    Channel("voice2", 64000),
    Channel("voice3", 64000),
    Channel("voice4", 64000),
))
print("\ncomposition:", validate_plan(plan))
tree = allocate_bands(plan)
for level, slot in iter_band_slots(tree):
    print(f"  band {level}: {slot.channel_id} decimation {slot.decimation} phase {slot.phase}")
leaf = tree_leaf(tree)
print(f"  leaf {leaf.level}: {leaf.channel_id}")
print("serialized:", tree_to_json(tree))
