"""
Joint stability
===============

How far the radial head can be pushed before it slips over the rim, how
the interosseous membrane resists a lateral push, and how the medial
collateral ligament stretches with flexion.
"""

import dataclasses
import math

import numpy as np

from arthrosim import default_config
from arthrosim.humeroradial import dislocation_profile
from arthrosim.iom import bundle_strain_curve, lateral_equilibrium
from arthrosim.mcl import mcl_curve

config = default_config()

# Lateral force against ligament elongation rises, peaks and falls: the
# peak is the force needed to dislocate the joint.
prof = dislocation_profile(config.humeroradial, 200)
print(f"dislocation at delta_lp = {prof.delta_lp * 1e3:.3f} mm, F_e = {prof.f_peak:.3f} N")

# A larger rim angle raises the force needed.
for t in (10, 20, 30):
    g = dataclasses.replace(config.humeroradial, theta_s=math.radians(t))
    p = dislocation_profile(g, 50)
    print(f"  theta_s = {t:2d} deg  ->  F_peak = {p.f_peak:.3f} N")

# Bundles wound one way tighten under a left deflection, the others under a right one.
r = bundle_strain_curve(config.linkage, config.bundles, (-8.0, 8.0), 17)
print("\nbundle  dir  strain at -8 deg  strain at +8 deg")
for b in config.bundles:
    s = r[f"strain_{b.id}"]
    print(f"{b.id:6d}  {b.direction:>3}  {s[0]:16.4f}  {s[-1]:16.4f}")

# Deflection under a small force applied at the wrist end of the radius.
for side in ("left", "right"):
    theta = lateral_equilibrium(config.linkage, config.bundles, 1.0, config.linkage.l3, side)
    print(f"1 N push to the {side}: radius turns {math.degrees(theta - config.linkage.theta_d_rest):+.3f} deg")

# The anterior band is taut in extension, the posterior band in flexion.
m = mcl_curve(config.mcl, (0.0, 140.25), 562)
for deg in (0.0, 45.0, 90.0, 135.0):
    i = int(np.argmin(np.abs(np.degrees(m.abscissa) - deg)))
    print(f"theta21 = {deg:5.1f} deg  anterior {m['eps_anterior'][i]:+.3f}  posterior {m['eps_posterior'][i]:+.3f}")
