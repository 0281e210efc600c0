"""Extract a salient-region mask from a synthetic image.

A pixel is salient when exp(-(V - S)) clears the alpha threshold, so
saturated regions survive and bright washed-out regions drop away.
"""

import numpy as np

from querysum import hsv_planes, mask_difference, salient_mask

# a dull gray backdrop with a saturated red block and a washed-out white block
frame = np.full((120, 160, 3), 90, dtype=np.uint8)
frame[30:70, 20:70] = (200, 30, 30)     # saturated: S high, V moderate
frame[30:70, 90:140] = (250, 245, 240)  # bright but unsaturated: V ~ 1, S ~ 0

planes = hsv_planes(frame)
print(f"value plane range      [{planes.v_plane.min():.3f}, {planes.v_plane.max():.3f}]")
print(f"saturation plane range [{planes.s_plane.min():.3f}, {planes.s_plane.max():.3f}]")

mask = salient_mask(planes, alpha=0.7)
print(f"\nalpha=0.7 keeps {mask.coverage():.1%} of pixels")
print(f"salient centroid (x, y) = ({mask.centroid()[0]:.3f}, {mask.centroid()[1]:.3f})")

red_block = mask.mask[30:70, 20:70]
white_block = mask.mask[30:70, 90:140]
print(f"red block salient fraction:   {red_block.mean():.2f}")
print(f"white block salient fraction: {white_block.mean():.2f}")

# a stricter threshold keeps fewer pixels
for alpha in (0.5, 0.7, 0.9, 0.99):
    m = salient_mask(planes, alpha)
    print(f"alpha={alpha:<4} -> coverage {m.coverage():.1%}")

# masks of different frames compare on a common 256x256 grid
shifted = np.roll(frame, 40, axis=1)
other = salient_mask(hsv_planes(shifted), alpha=0.7)
print(f"\nmask difference vs 40px-shifted frame: {mask_difference(mask, other):.4f}")
print(f"mask difference vs itself:             {mask_difference(mask, mask):.4f}")
