"""
Forearm rotation: torque and ligament stretch
=============================================

Pronation and supination torque at the tendon limits, then the ligament
elongations that come with rotating the forearm.
"""

import math

import numpy as np

from arthrosim import default_config
from arthrosim.actuation import torque_envelope
from arthrosim.tfcc import tfcc_curve

config = default_config()
offset = math.degrees(config.joint.theta22_reference)

# Model angles start at full supination; add the offset to get the
# anatomical angle used in joint tables.
env = torque_envelope(config, "forearm", n=447, theta21_fixed=math.radians(90))
deg = np.degrees(env.abscissa)
ip = int(np.argmax(env["pronation"]))
isup = int(np.argmax(env["supination"]))
print(f"pronation peak  {env['pronation'][ip]:.2f} N*m at model {deg[ip]:.1f} deg "
      f"({deg[ip] + offset:.1f} deg anatomical)")
print(f"supination peak {env['supination'][isup]:.2f} N*m at model {deg[isup]:.1f} deg")
print(f"supination range over rotation: {env['supination'].min():.2f} to {env['supination'].max():.2f} N*m")

# The distal ligament barely stretches until it meets the extensor tendon,
# then lengthens quickly.  The proximal one stays short over the full range.
lo, hi = (float(np.degrees(v)) for v in config.joint.theta22_model_range)
stretch = tfcc_curve(config.tfcc, (lo, hi), 12)
print("\n theta22   DRUL mm   PRUL mm")
for t, d, p in zip(np.degrees(stretch.abscissa), stretch["drul"], stretch["prul"]):
    print(f"{t:8.1f}  {d * 1e3:8.3f}  {p * 1e3:8.3f}")
