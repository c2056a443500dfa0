# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Diffusion and collision statistics
# Type A draws a fresh 50n-bit message per trial; type B reuses one message.
# Either way one random bit is flipped and the two digests compared.

# +
from shah.analysis import run_collision_test, run_type_a_diffusion, run_type_b_diffusion
# -

for n, trials in [(128, 2048), (160, 1024), (256, 1024), (512, 256)]:
    a = run_type_a_diffusion(n=n, trials=trials, rng_seed=1)
    b = run_type_b_diffusion(n=n, trials=trials, rng_seed=1)
    print(f"n={n:4d} A: P={a.p_mean_percent:.2f}% dP={a.delta_p_percent:.2f}%   "
          f"B: P={b.p_mean_percent:.2f}% dP={b.delta_p_percent:.2f}%")

# In type B the keystream depends only on the key, so flipping message bit j
# changes exactly bit j mod n of the folded vector. The trials therefore reuse
# just n distinct outcomes, and the spread statistic varies from one fixed
# message to the next more than the trial count suggests.

for seed in range(6):
    r = run_type_b_diffusion(n=128, trials=2048, rng_seed=seed)
    print(seed, round(r.delta_p_percent, 2))

# Collisions: every digest byte is one symbol, n/8 symbols per digest.

r = run_collision_test(n=128, trials=2000, variant="A", rng_seed=1)
print(r.to_text())
print(r.histogram_csv())

# The short single-block variant:

print(run_collision_test(n=128, trials=128, variant="B", message_bits=128, rng_seed=1).to_text())
