# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
# ---

# # Hashing and sensitivity
# Digests of every size, then the nine sensitivity cases on the Shumen
# paragraph. These hex values are self-consistent for this implementation's bit
# conventions; they are not expected to match digests printed elsewhere.

# +
from shah import DEFAULT_KEY, digest_hex
from shah.analysis import hamming
from shah.hashing import digest
# -

for n in (128, 160, 256, 512, 1024):
    print(n, digest_hex(b"A", n=n))

paragraph = (
    "Konstantin Preslavsky University of Shumen has inherited a centuries-long "
    "educational tradition dating back to the famous Pliska and Preslav Literary "
    "School (10th c). Shumen University is one of the five classical public "
    "universities in Bulgaria it is recognized as a leading university that offers "
    "modern facilities for education, scientific researches and creative work."
)

cases = {
    1: (paragraph, DEFAULT_KEY),
    2: ("k" + paragraph[1:], DEFAULT_KEY),
    3: (paragraph.replace("10th", "11th"), DEFAULT_KEY),
    4: (paragraph.replace("School", "school"), DEFAULT_KEY),
    5: (paragraph.replace(",", ".", 1), DEFAULT_KEY),
    6: (paragraph + " ", DEFAULT_KEY),
    7: (paragraph.replace("recognized", "recognize"), DEFAULT_KEY),
    8: (paragraph, DEFAULT_KEY.with_seeds(x10=DEFAULT_KEY.x10 - 1e-15)),
    9: (paragraph, DEFAULT_KEY.with_seeds(y20=DEFAULT_KEY.y20 + 1e-15)),
}
base = digest(paragraph.encode())
for case, (text, key) in cases.items():
    d = digest(text.encode(), key)
    print(case, d.hex().upper(), hamming(base, d))

# Case 9 reproduces Case 1 exactly. Close to that seed the map barely depends
# on y, so the 1e-15 change is rounded away within two steps of double-precision
# arithmetic and the two keys produce the same keystream.
