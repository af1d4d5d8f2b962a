"""Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK qk15 tables).

XGK[1], XGK[3], XGK[5], XGK[7] are the 7-point Gauss nodes; only the
non-negative half is stored.
"""

XGK = (
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
)

WGK = (
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
)

WG = (
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
)


def full_rule():
    """Nodes, Kronrod weights and Gauss weights (0 off the Gauss subset), 15 each."""
    nodes, wk, wg = [], [], []
    for j in range(7):
        gw = WG[j // 2] if j % 2 else 0.0
        nodes += [-XGK[j], XGK[j]]
        wk += [WGK[j], WGK[j]]
        wg += [gw, gw]
    nodes.append(0.0)
    wk.append(WGK[7])
    wg.append(WG[3])
    return nodes, wk, wg
