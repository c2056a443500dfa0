# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # The shrinking keystream
# Two Tinkerbell orbits in lockstep. A bit from the first is kept only when the
# second one's bit is 1.

# +
from shah.analysis import ent_suite
from shah.shrink_prng import DEFAULT_KEY, InjectedPairStream, Keystream
# -

# The decimation rule on its own, with hand-made bit pairs:

print(InjectedPairStream([1, 0, 1, 1], [0, 0, 1, 1]).next_bits(2))

# The real generator under the reference key:

ks = Keystream(DEFAULT_KEY)
print("".join(map(str, ks.next_bits(64))))
print(ks.map_a, ks.emitted_count)

# Ten megabytes through the byte statistics. The bitstream file written here
# is raw bytes, MSB first, which is what NIST STS (binary mode), DIEHARD and
# ENT read.

data = Keystream().export_bytes(10_000_000)
print(ent_suite(data).to_text())
with open("shah_keystream.bin", "wb") as fh:
    fh.write(data)
