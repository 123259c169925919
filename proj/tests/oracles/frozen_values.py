"""Independent high-precision oracle for the frozen constants in
tests/support/frozen_values.hpp. Uses mpmath only (no shared code with the
C++ implementation). Run: python3 tests/oracles/frozen_values.py
"""
import mpmath as mp

mp.mp.dps = 40


def cycle(g):
    return mp.matrix([[0, 0, g], [g, 0, 0], [0, g, 0]])


def solve(P, e):
    return mp.lu_solve(mp.eye(P.rows) - P, e)


def cost(P, eps, i, u):
    drive = sum(P[i, k] * u[k] for k in range(P.rows)) + eps[i]
    return u[i] ** 2 / 2 - u[i] * drive


def gap(Ps, shocks, i):
    us = [solve(Ps[j], shocks[j]) for j in range(len(Ps))]
    uo = mp.matrix([us[j][j] for j in range(len(Ps))])
    return cost(Ps[i], shocks[i], i, uo) - cost(Ps[i], shocks[i], i, us[i]), \
        cost(Ps[i], shocks[i], i, us[i]), cost(Ps[i], shocks[i], i, uo)


def emit(name, value):
    print(f"inline constexpr double {name} = {mp.nstr(value, 20)};")


g, b = mp.mpf("0.5"), mp.mpf("0.9")
P = cycle(g)
A = mp.eye(3) - P
sv = mp.svd_r(A, compute_uv=False)
emit("kCycleHalfSigmaMin", min(sv))
emit("kCycleHalfSigmaMax", max(sv))
emit("kCycleHalfLambdaMax", max(mp.eigsy((P + P.T) / 2)[0]))
emit("kCycleOneLambdaMax", max(mp.eigsy((cycle(1) + cycle(1).T) / 2)[0]))

eps1 = mp.matrix([b, 1, 1])
u1 = solve(P, eps1)
for k in range(3):
    emit(f"kShockCycleU1_{k}", u1[k])
emit("kShockCycleCostPlayer0AtU1", cost(P, eps1, 0, u1))

shocks = [mp.matrix([b, 1, 1]), mp.matrix([1, b, 1]), mp.matrix([1, 1, b])]
gp, pred, real = gap([P] * 3, shocks, 0)
emit("kShockCycleGap", gp)
emit("kShockCyclePredicted", pred)
emit("kShockCycleRealized", real)
emit("kShockCycleRelativeGap", (real - pred) / abs(pred))
uo = mp.matrix([solve(P, shocks[j])[j] for j in range(3)])
for k in range(3):
    emit(f"kShockCycleRealized_{k}", uo[k])

# Shock misspecification centrality of the γ = 0.5 cycle, pair (0, 2).
L = mp.inverse(A)
B = mp.matrix(3, 3)
for r in range(3):
    for c in range(3):
        B[r, c] = L[0, r] * P[0, 2] * L[2, c]
for r in range(3):
    for c in range(3):
        emit(f"kCycleShockPair02_{r}{c}", B[r, c])

# Asymmetric star: hub 0 receives 0.5 from each of three leaves.
S = mp.matrix(4, 4)
for k in range(1, 4):
    S[0, k] = mp.mpf("0.5")
Ls = mp.inverse(mp.eye(4) - S)
emit("kStarHubBonacich", sum(Ls[0, c] for c in range(4)))

# Graph cycle, δ = 0.5: direct inverse of I - P^(0).
d = mp.mpf("0.5")
c = 1 - d / mp.sqrt(2)
P0 = mp.matrix([[0, 0, c], [1, 0, 0], [0, 1, 0]])
L0 = mp.inverse(mp.eye(3) - P0)
for r in range(3):
    for cc in range(3):
        emit(f"kGraphCycleL0_{r}{cc}", L0[r, cc])
P1 = mp.matrix([[0, 0, 1], [c, 0, 0], [0, 1, 0]])
P2 = mp.matrix([[0, 0, 1], [1, 0, 0], [0, c, 0]])
e = mp.matrix([1, -1, -1])
for k in range(3):
    emit(f"kGraphCycleAltGap_{k}", gap([P0, P1, P2], [e] * 3, k)[0])
ones = mp.matrix([1, 1, 1])
emit("kGraphCycleUniformGap", gap([P0, P1, P2], [ones] * 3, 0)[0])
