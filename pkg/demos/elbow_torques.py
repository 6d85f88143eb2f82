"""
Elbow torque envelope
=====================

Walks through the flexion and extension torque a tendon-driven elbow can
produce at its tendon force limits.
"""

import math

import numpy as np

from arthrosim import default_config
from arthrosim.actuation import extension_torque, flexion_stage, flexion_torque, torque_envelope

config = default_config()
brachialis = config.elbow_actuation.brachialis
biceps = config.elbow_actuation.biceps

# Each flexor wraps its routing pulley until the link lifts off, so the
# moment arm is constant up to the stage angle gamma.
for name, g in (("brachialis", brachialis), ("biceps", biceps)):
    print(f"{name:<11} gamma = {math.degrees(g.gamma):6.2f} deg, "
          f"stage-1 arm = {g.r_routing * 1e3:.1f} mm, F = {g.f_t1:.0f} N")

# Sample a few angles and show which stage each one is in.
print("\n theta21  stage(b)  tau_brachialis  tau_biceps")
for deg in (0, 20, 45, 80, 110, 140.25):
    t = math.radians(deg)
    print(f"{deg:8.2f}  {flexion_stage(brachialis, t):8d}  {flexion_torque(brachialis, t):14.3f}"
          f"  {flexion_torque(biceps, t):10.3f}")

# The combined envelope peaks inside the range of motion.
env = torque_envelope(config, "flexion", n=562)
i = int(np.argmax(env["combined"]))
print(f"\ncombined flexion peak {env['combined'][i]:.2f} N*m at {math.degrees(env.abscissa[i]):.1f} deg")
print(f"at 0 deg: {env['combined'][0]:.2f} N*m, at 140.25 deg: {env['combined'][-1]:.2f} N*m")

# Extension runs over a fixed-radius pulley, so it does not depend on angle.
print(f"extension torque {extension_torque(brachialis, 0.0):.2f} N*m at every angle")
