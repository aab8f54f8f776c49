"""Jitted inner loops for the nested collapsed Gibbs sampler.

State is kept in flat preallocated arrays so the per-subject membership
update runs without Python overhead:

* ``sy``, ``sx``     -- per-subject cluster / subcluster labels (dense)
* ``k_arr[0]``       -- number of occupied y-clusters
* ``nj``, ``kj``     -- per-cluster subject count and subcluster count
* ``nlj``            -- per-(cluster, subcluster) subject counts
* ``beta, sigma2``   -- outcome-model parameters, one row per y-cluster
* ``tpr, pib, mu, tau2`` -- covariate-model parameters per subcluster

The design matrix ``X`` has columns (1, treatment indicators, binary
covariates, continuous covariates); imputed covariate values are written
directly into ``X``.  All kernel evaluations happen in log space and the
membership multinomial is normalized after max-subtraction, so products
over many covariates cannot underflow.

Status codes returned by the sweep: 0 = ok, 1 = weight table not finite
(corrupt parameters), 2 = cluster capacity reached, 3 = subcluster capacity
reached.  Capacity codes are raised *before* any mutation for the subject,
so the caller can grow the arrays and resume at the same subject.
"""

import numpy as np
from numba import njit

LOG_2PI = 1.8378770664093453

STATUS_OK = 0
STATUS_UNDERFLOW = 1
STATUS_GROW_K = 2
STATUS_GROW_L = 3


@njit(cache=True, inline="always")
def logit_loglik(y, eta):
    """log Bernoulli(y | logit^-1(eta)) for y in {0, 1}."""
    t = (1.0 - 2.0 * y) * eta
    if t > 35.0:
        return -t
    return -np.log1p(np.exp(t))


@njit(cache=True, inline="always")
def normal_loglik(x, mean, var):
    d = x - mean
    return -0.5 * (LOG_2PI + np.log(var)) - 0.5 * d * d / var


@njit(cache=True, inline="always")
def draw_scaled_inv_chi2(rng, nu, scale_times_nu):
    """Draw from scale-inv-chi2(nu, s2) given nu*s2."""
    return scale_times_nu / rng.chisquare(nu)


@njit(cache=True)
def _detach(i, sy, sx, k_arr, nj, kj, nlj, beta, sigma2, tpr, pib, mu, tau2,
            seed_beta, seed_sigma2, seed_tpr, seed_pib, seed_mu, seed_tau2):
    """Remove subject i from the partition, compacting labels.

    If i leaves its subcluster (or cluster) empty, the orphaned parameters
    are copied into the seed buffers so the caller can place them in the
    first auxiliary slot.  Returns 0 (no seed), 1 (omega seed only) or
    2 (theta and omega seed).
    """
    n = sy.shape[0]
    q = tpr.shape[2]
    p1 = pib.shape[2]
    p2 = mu.shape[2]
    dim = beta.shape[1]
    j0 = sy[i]
    l0 = sx[i]
    nlj[j0, l0] -= 1
    nj[j0] -= 1
    seed = 0
    if nlj[j0, l0] == 0:
        seed = 1
        for t in range(q):
            seed_tpr[t] = tpr[j0, l0, t]
        for t in range(p1):
            seed_pib[t] = pib[j0, l0, t]
        for t in range(p2):
            seed_mu[t] = mu[j0, l0, t]
            seed_tau2[t] = tau2[j0, l0, t]
        for l in range(l0, kj[j0] - 1):
            nlj[j0, l] = nlj[j0, l + 1]
            for t in range(q):
                tpr[j0, l, t] = tpr[j0, l + 1, t]
            for t in range(p1):
                pib[j0, l, t] = pib[j0, l + 1, t]
            for t in range(p2):
                mu[j0, l, t] = mu[j0, l + 1, t]
                tau2[j0, l, t] = tau2[j0, l + 1, t]
        kj[j0] -= 1
        for t in range(n):
            if t != i and sy[t] == j0 and sx[t] > l0:
                sx[t] -= 1
        if nj[j0] == 0:
            # the emptied cluster necessarily had this single subcluster
            seed = 2
            for t in range(dim):
                seed_beta[t] = beta[j0, t]
            seed_sigma2[0] = sigma2[j0]
            k = k_arr[0]
            for j in range(j0, k - 1):
                nj[j] = nj[j + 1]
                kj[j] = kj[j + 1]
                sigma2[j] = sigma2[j + 1]
                for t in range(dim):
                    beta[j, t] = beta[j + 1, t]
                for l in range(kj[j + 1]):
                    nlj[j, l] = nlj[j + 1, l]
                    for t in range(q):
                        tpr[j, l, t] = tpr[j + 1, l, t]
                    for t in range(p1):
                        pib[j, l, t] = pib[j + 1, l, t]
                    for t in range(p2):
                        mu[j, l, t] = mu[j + 1, l, t]
                        tau2[j, l, t] = tau2[j + 1, l, t]
            k_arr[0] = k - 1
            for t in range(n):
                if t != i and sy[t] > j0:
                    sy[t] -= 1
    return seed


@njit(cache=True)
def _draw_aux(k, m, outcome_continuous, rng,
              beta0, tau2_beta, nu_sigma, sigma2_0,
              tconc, a_x, b_x, nu0, tau20, c0, mu0,
              aux_beta, aux_sigma2, aux_tpr, aux_pib, aux_mu, aux_tau2):
    """Fill auxiliary parameter tables with fresh prior draws.

    Covariate rows: m per existing cluster (rows j*m..j*m+m-1), then m rows
    for the candidate new y-clusters.  Outcome rows: m.
    """
    dim = beta0.shape[0]
    q = tconc.shape[0]
    p1 = aux_pib.shape[1]
    p2 = aux_mu.shape[1]
    sd_beta = np.sqrt(tau2_beta)
    for t in range(m):
        for d in range(dim):
            aux_beta[t, d] = rng.normal(beta0[d], sd_beta)
        if outcome_continuous:
            aux_sigma2[t] = draw_scaled_inv_chi2(rng, nu_sigma, nu_sigma * sigma2_0)
        else:
            aux_sigma2[t] = 1.0
    rows = (k + 1) * m
    for r in range(rows):
        tot = 0.0
        for t in range(q):
            g = rng.gamma(tconc[t], 1.0)
            aux_tpr[r, t] = g
            tot += g
        for t in range(q):
            aux_tpr[r, t] /= tot
        for t in range(p1):
            aux_pib[r, t] = rng.beta(a_x, b_x)
        for t in range(p2):
            v = draw_scaled_inv_chi2(rng, nu0, nu0 * tau20)
            aux_tau2[r, t] = v
            aux_mu[r, t] = rng.normal(mu0, np.sqrt(v / c0))


@njit(cache=True, inline="always")
def _cov_loglik_row(a_i, xb, xc, tpr_row, pib_row, mu_row, tau2_row):
    """log K((a, l); omega) for one subject against one parameter row."""
    ll = np.log(tpr_row[a_i])
    for r in range(xb.shape[0]):
        if xb[r] == 1.0:
            ll += np.log(pib_row[r])
        else:
            ll += np.log1p(-pib_row[r])
    for r in range(xc.shape[0]):
        ll += normal_loglik(xc[r], mu_row[r], tau2_row[r])
    return ll


@njit(cache=True)
def _membership_logweights(i, y, a, X, k, nj, kj, nlj, beta, sigma2,
                           tpr, pib, mu, tau2,
                           aux_beta, aux_sigma2, aux_tpr, aux_pib, aux_mu, aux_tau2,
                           alpha_theta, alpha_omega, m, outcome_continuous,
                           logw, slot_j, slot_l):
    """Fill the membership log-weight table for subject i; returns its size.

    Slot order: for each cluster j, existing subclusters then its m
    auxiliary subclusters; finally the m auxiliary clusters.  Encoding:
    slot_l >= kj[j] marks an auxiliary subcluster, slot_j >= k an auxiliary
    cluster.
    """
    q = tpr.shape[2]
    p1 = pib.shape[2]
    dim = X.shape[1]
    a_i = a[i]
    y_i = y[i]
    xb = X[i, q:q + p1]
    xc = X[i, q + p1:]
    idx = 0
    log_aom = np.log(alpha_omega / m)
    for j in range(k):
        eta = 0.0
        for d in range(dim):
            eta += beta[j, d] * X[i, d]
        if outcome_continuous:
            oll = normal_loglik(y_i, eta, sigma2[j])
        else:
            oll = logit_loglik(y_i, eta)
        base = np.log(float(nj[j])) - np.log(nj[j] + alpha_omega) + oll
        for l in range(kj[j]):
            logw[idx] = base + np.log(float(nlj[j, l])) + _cov_loglik_row(
                a_i, xb, xc, tpr[j, l], pib[j, l], mu[j, l], tau2[j, l])
            slot_j[idx] = j
            slot_l[idx] = l
            idx += 1
        for t in range(m):
            r = j * m + t
            logw[idx] = base + log_aom + _cov_loglik_row(
                a_i, xb, xc, aux_tpr[r], aux_pib[r], aux_mu[r], aux_tau2[r])
            slot_j[idx] = j
            slot_l[idx] = kj[j] + t
            idx += 1
    log_ath = np.log(alpha_theta / m)
    for t in range(m):
        eta = 0.0
        for d in range(dim):
            eta += aux_beta[t, d] * X[i, d]
        if outcome_continuous:
            oll = normal_loglik(y_i, eta, aux_sigma2[t])
        else:
            oll = logit_loglik(y_i, eta)
        r = k * m + t
        logw[idx] = log_ath + oll + _cov_loglik_row(
            a_i, xb, xc, aux_tpr[r], aux_pib[r], aux_mu[r], aux_tau2[r])
        slot_j[idx] = k + t
        slot_l[idx] = 0
        idx += 1
    return idx


@njit(cache=True)
def _choose_slot(logw, size, rng):
    """Multinomial draw from unnormalized log weights; -1 on underflow."""
    mx = -np.inf
    for t in range(size):
        if logw[t] > mx:
            mx = logw[t]
    if not np.isfinite(mx):
        return -1
    tot = 0.0
    for t in range(size):
        logw[t] = np.exp(logw[t] - mx)
        tot += logw[t]
    u = rng.random() * tot
    acc = 0.0
    for t in range(size):
        acc += logw[t]
        if u <= acc:
            return t
    return size - 1


@njit(cache=True)
def _commit(i, choice_j, choice_l, sy, sx, k_arr, nj, kj, nlj,
            beta, sigma2, tpr, pib, mu, tau2,
            aux_beta, aux_sigma2, aux_tpr, aux_pib, aux_mu, aux_tau2, m):
    """Apply a membership choice, opening a new (sub)cluster if needed."""
    q = tpr.shape[2]
    p1 = pib.shape[2]
    p2 = mu.shape[2]
    dim = beta.shape[1]
    k = k_arr[0]
    if choice_j >= k:
        t = choice_j - k
        r = k * m + t
        for d in range(dim):
            beta[k, d] = aux_beta[t, d]
        sigma2[k] = aux_sigma2[t]
        for d in range(q):
            tpr[k, 0, d] = aux_tpr[r, d]
        for d in range(p1):
            pib[k, 0, d] = aux_pib[r, d]
        for d in range(p2):
            mu[k, 0, d] = aux_mu[r, d]
            tau2[k, 0, d] = aux_tau2[r, d]
        kj[k] = 1
        nlj[k, 0] = 1
        nj[k] = 1
        k_arr[0] = k + 1
        sy[i] = k
        sx[i] = 0
    elif choice_l >= kj[choice_j]:
        j = choice_j
        t = choice_l - kj[j]
        r = j * m + t
        l = kj[j]
        for d in range(q):
            tpr[j, l, d] = aux_tpr[r, d]
        for d in range(p1):
            pib[j, l, d] = aux_pib[r, d]
        for d in range(p2):
            mu[j, l, d] = aux_mu[r, d]
            tau2[j, l, d] = aux_tau2[r, d]
        kj[j] += 1
        nlj[j, l] = 1
        nj[j] += 1
        sy[i] = j
        sx[i] = l
    else:
        nlj[choice_j, choice_l] += 1
        nj[choice_j] += 1
        sy[i] = choice_j
        sx[i] = choice_l


@njit(cache=True)
def sweep_memberships(start, y, a, X, sy, sx, k_arr, nj, kj, nlj, beta, sigma2,
                      tpr, pib, mu, tau2, outcome_continuous,
                      alpha_theta, alpha_omega, m, rng,
                      beta0, tau2_beta, nu_sigma, sigma2_0,
                      tconc, a_x, b_x, nu0, tau20, c0, mu0):
    """One Gibbs pass over subjects start..n-1; returns (status, subject)."""
    n = y.shape[0]
    q = tpr.shape[2]
    p1 = pib.shape[2]
    p2 = mu.shape[2]
    dim = X.shape[1]
    kmax = nj.shape[0]
    lmax = nlj.shape[1]
    seed_beta = np.empty(dim)
    seed_sigma2 = np.empty(1)
    seed_tpr = np.empty(q)
    seed_pib = np.empty(p1)
    seed_mu = np.empty(p2)
    seed_tau2 = np.empty(p2)
    for i in range(start, n):
        k = k_arr[0]
        if k + 1 > kmax:
            return STATUS_GROW_K, i
        biggest = 0
        total_slots = m
        for j in range(k):
            if kj[j] > biggest:
                biggest = kj[j]
            total_slots += kj[j] + m
        if biggest + 1 > lmax:
            return STATUS_GROW_L, i

        j0 = sy[i]
        seed = _detach(i, sy, sx, k_arr, nj, kj, nlj, beta, sigma2,
                       tpr, pib, mu, tau2,
                       seed_beta, seed_sigma2, seed_tpr, seed_pib, seed_mu, seed_tau2)
        k = k_arr[0]
        aux_rows = (k + 1) * m
        aux_beta = np.empty((m, dim))
        aux_sigma2 = np.empty(m)
        aux_tpr = np.empty((aux_rows, q))
        aux_pib = np.empty((aux_rows, p1))
        aux_mu = np.empty((aux_rows, p2))
        aux_tau2 = np.empty((aux_rows, p2))
        _draw_aux(k, m, outcome_continuous, rng,
                  beta0, tau2_beta, nu_sigma, sigma2_0,
                  tconc, a_x, b_x, nu0, tau20, c0, mu0,
                  aux_beta, aux_sigma2, aux_tpr, aux_pib, aux_mu, aux_tau2)
        if seed == 2:
            row = k * m
            for d in range(dim):
                aux_beta[0, d] = seed_beta[d]
            aux_sigma2[0] = seed_sigma2[0]
            for d in range(q):
                aux_tpr[row, d] = seed_tpr[d]
            for d in range(p1):
                aux_pib[row, d] = seed_pib[d]
            for d in range(p2):
                aux_mu[row, d] = seed_mu[d]
                aux_tau2[row, d] = seed_tau2[d]
        elif seed == 1:
            row = j0 * m
            for d in range(q):
                aux_tpr[row, d] = seed_tpr[d]
            for d in range(p1):
                aux_pib[row, d] = seed_pib[d]
            for d in range(p2):
                aux_mu[row, d] = seed_mu[d]
                aux_tau2[row, d] = seed_tau2[d]

        logw = np.empty(total_slots)
        slot_j = np.empty(total_slots, dtype=np.int64)
        slot_l = np.empty(total_slots, dtype=np.int64)
        size = _membership_logweights(
            i, y, a, X, k, nj, kj, nlj, beta, sigma2, tpr, pib, mu, tau2,
            aux_beta, aux_sigma2, aux_tpr, aux_pib, aux_mu, aux_tau2,
            alpha_theta, alpha_omega, m, outcome_continuous, logw, slot_j, slot_l)
        choice = _choose_slot(logw, size, rng)
        if choice < 0:
            return STATUS_UNDERFLOW, i
        _commit(i, slot_j[choice], slot_l[choice], sy, sx, k_arr, nj, kj, nlj,
                beta, sigma2, tpr, pib, mu, tau2,
                aux_beta, aux_sigma2, aux_tpr, aux_pib, aux_mu, aux_tau2, m)
    return STATUS_OK, n


@njit(cache=True)
def _member_order(sy, sx, k, kj, nlj, lmax):
    """Counting sort of subjects by (cluster, subcluster).

    Returns (order, first) where members of (j, l) occupy
    order[first[j*lmax+l] : first[j*lmax+l] + nlj[j, l]] and the members of
    cluster j are contiguous.
    """
    n = sy.shape[0]
    first = np.zeros(k * lmax + 1, dtype=np.int64)
    acc = 0
    for j in range(k):
        for l in range(kj[j]):
            first[j * lmax + l] = acc
            acc += nlj[j, l]
    cursor = first.copy()
    order = np.empty(n, dtype=np.int64)
    for i in range(n):
        key = sy[i] * lmax + sx[i]
        order[cursor[key]] = i
        cursor[key] += 1
    return order, first


@njit(cache=True)
def update_outcome_cluster_binary(yv, Xm, beta_row, beta0, tau2_beta,
                                  n_inner, step, rng, counters):
    """Adaptive random-walk Metropolis sweep for one cluster's logistic beta.

    The proposal is preconditioned by the Cholesky factor of
    (I/tau2_beta + 0.25 X'X), the Fisher information bound at p=1/2, so a
    single scalar step size works across cluster sizes.
    """
    nm = Xm.shape[0]
    dim = Xm.shape[1]
    A = np.empty((dim, dim))
    for r in range(dim):
        for c in range(dim):
            s = 0.0
            for t in range(nm):
                s += Xm[t, r] * Xm[t, c]
            A[r, c] = 0.25 * s
        A[r, r] += 1.0 / tau2_beta
    C = np.linalg.cholesky(A)
    cur = np.empty(dim)
    for d in range(dim):
        cur[d] = beta_row[d]

    def _logpost(b):
        lp = 0.0
        for d in range(dim):
            diff = b[d] - beta0[d]
            lp -= 0.5 * diff * diff / tau2_beta
        for t in range(nm):
            eta = 0.0
            for d in range(dim):
                eta += Xm[t, d] * b[d]
            lp += logit_loglik(yv[t], eta)
        return lp

    lp_cur = _logpost(cur)
    z = np.empty(dim)
    for _ in range(n_inner):
        for d in range(dim):
            z[d] = rng.standard_normal()
        stepv = np.linalg.solve(C.T, z)
        prop = cur + step * stepv
        lp_prop = _logpost(prop)
        counters[1] += 1
        if np.log(rng.random()) < lp_prop - lp_cur:
            cur = prop
            lp_cur = lp_prop
            counters[0] += 1
    for d in range(dim):
        beta_row[d] = cur[d]


@njit(cache=True)
def update_outcome_cluster_linear(yv, Xm, beta_row, sigma2_arr, jrow,
                                  beta0, tau2_beta, nu_sigma, sigma2_0, rng):
    """Semi-conjugate Gibbs draws sigma2 | beta then beta | sigma2."""
    nm = Xm.shape[0]
    dim = Xm.shape[1]
    rss = 0.0
    for t in range(nm):
        eta = 0.0
        for d in range(dim):
            eta += Xm[t, d] * beta_row[d]
        r = yv[t] - eta
        rss += r * r
    nu_n = nu_sigma + nm
    sigma2_new = (nu_sigma * sigma2_0 + rss) / rng.chisquare(nu_n)
    sigma2_arr[jrow] = sigma2_new

    P = np.empty((dim, dim))
    for r in range(dim):
        for c in range(dim):
            s = 0.0
            for t in range(nm):
                s += Xm[t, r] * Xm[t, c]
            P[r, c] = s / sigma2_new
        P[r, r] += 1.0 / tau2_beta
    rhs = np.empty(dim)
    for r in range(dim):
        s = 0.0
        for t in range(nm):
            s += Xm[t, r] * yv[t]
        rhs[r] = s / sigma2_new + beta0[r] / tau2_beta
    mean = np.linalg.solve(P, rhs)
    C = np.linalg.cholesky(P)
    z = np.empty(dim)
    for d in range(dim):
        z[d] = rng.standard_normal()
    dev = np.linalg.solve(C.T, z)
    for d in range(dim):
        beta_row[d] = mean[d] + dev[d]


@njit(cache=True)
def update_covariate_subcluster(a_mem, xb_mem, xc_mem, tpr_row, pib_row,
                                mu_row, tau2_row, tconc,
                                a_x, b_x, nu0, tau20, c0, mu0, rng):
    """Conjugate draws for one subcluster's covariate parameters."""
    nm = a_mem.shape[0]
    q = tconc.shape[0]
    p1 = pib_row.shape[0]
    p2 = mu_row.shape[0]
    tot = 0.0
    for t in range(q):
        cnt = 0.0
        for s in range(nm):
            if a_mem[s] == t:
                cnt += 1.0
        g = rng.gamma(tconc[t] + cnt, 1.0)
        tpr_row[t] = g
        tot += g
    for t in range(q):
        tpr_row[t] /= tot
    for r in range(p1):
        s1 = 0.0
        for s in range(nm):
            s1 += xb_mem[s, r]
        pib_row[r] = rng.beta(a_x + s1, b_x + nm - s1)
    for r in range(p2):
        s1 = 0.0
        s2 = 0.0
        for s in range(nm):
            v = xc_mem[s, r]
            s1 += v
            s2 += v * v
        if nm > 0:
            xbar = s1 / nm
            ssd = s2 - nm * xbar * xbar  # (n-1) * sample variance
            if ssd < 0.0:
                ssd = 0.0
        else:
            xbar = 0.0
            ssd = 0.0
        nu_n = nu0 + nm
        shrink = c0 * nm / (c0 + nm) if nm > 0 else 0.0
        num = nu0 * tau20 + ssd + shrink * (xbar - mu0) * (xbar - mu0)
        v = num / rng.chisquare(nu_n)
        tau2_row[r] = v
        mu_post = (c0 * mu0 + nm * xbar) / (c0 + nm)
        mu_row[r] = rng.normal(mu_post, np.sqrt(v / (c0 + nm)))


@njit(cache=True)
def sweep_parameters(y, a, X, sy, sx, k, nj, kj, nlj, beta, sigma2,
                     tpr, pib, mu, tau2, outcome_continuous,
                     beta0, tau2_beta, nu_sigma, sigma2_0,
                     tconc, a_x, b_x, nu0, tau20, c0, mu0,
                     n_inner, step, rng, counters):
    """Refresh all cluster and subcluster parameters given the partition."""
    q = tpr.shape[2]
    p1 = pib.shape[2]
    lmax = nlj.shape[1]
    order, first = _member_order(sy, sx, k, kj, nlj, lmax)
    for j in range(k):
        njj = nj[j]
        start = first[j * lmax]
        Xm = np.empty((njj, X.shape[1]))
        yv = np.empty(njj)
        for t in range(njj):
            i = order[start + t]
            yv[t] = y[i]
            for d in range(X.shape[1]):
                Xm[t, d] = X[i, d]
        if outcome_continuous:
            update_outcome_cluster_linear(yv, Xm, beta[j], sigma2, j,
                                          beta0, tau2_beta, nu_sigma, sigma2_0, rng)
        else:
            update_outcome_cluster_binary(yv, Xm, beta[j], beta0, tau2_beta,
                                          n_inner, step, rng, counters)
        for l in range(kj[j]):
            nlm = nlj[j, l]
            s0 = first[j * lmax + l]
            a_mem = np.empty(nlm, dtype=np.int64)
            xb_mem = np.empty((nlm, p1))
            xc_mem = np.empty((nlm, mu.shape[2]))
            for t in range(nlm):
                i = order[s0 + t]
                a_mem[t] = a[i]
                for d in range(p1):
                    xb_mem[t, d] = X[i, q + d]
                for d in range(mu.shape[2]):
                    xc_mem[t, d] = X[i, q + p1 + d]
            update_covariate_subcluster(a_mem, xb_mem, xc_mem, tpr[j, l],
                                        pib[j, l], mu[j, l], tau2[j, l], tconc,
                                        a_x, b_x, nu0, tau20, c0, mu0, rng)


@njit(cache=True)
def sweep_imputations(miss_row, miss_col, y, a, X, sy, sx, beta, sigma2,
                      tpr, pib, mu, tau2, outcome_continuous, p1, rng, counters):
    """Redraw every missing covariate from its full conditional.

    Binary entries use the exact two-point conditional; continuous entries
    take one random-walk Metropolis step with the subcluster's tau as the
    proposal scale.  Values are written into the design matrix in place.
    """
    q = tpr.shape[2]
    dim = X.shape[1]
    for t in range(miss_row.shape[0]):
        i = miss_row[t]
        r = miss_col[t]
        j = sy[i]
        l = sx[i]
        c = q + r
        y_i = y[i]
        eta = 0.0
        for d in range(dim):
            eta += beta[j, d] * X[i, d]
        eta_rest = eta - beta[j, c] * X[i, c]
        if r < p1:
            pr = pib[j, l, r]
            if outcome_continuous:
                ll1 = np.log(pr) + normal_loglik(y_i, eta_rest + beta[j, c], sigma2[j])
                ll0 = np.log1p(-pr) + normal_loglik(y_i, eta_rest, sigma2[j])
            else:
                ll1 = np.log(pr) + logit_loglik(y_i, eta_rest + beta[j, c])
                ll0 = np.log1p(-pr) + logit_loglik(y_i, eta_rest)
            mx = ll1 if ll1 > ll0 else ll0
            w1 = np.exp(ll1 - mx)
            prob1 = w1 / (w1 + np.exp(ll0 - mx))
            v = 1.0 if rng.random() < prob1 else 0.0
            X[i, c] = v
        else:
            rc = r - p1
            cur = X[i, c]
            sd = np.sqrt(tau2[j, l, rc])
            prop = cur + sd * rng.standard_normal()
            if outcome_continuous:
                ll_cur = (normal_loglik(cur, mu[j, l, rc], tau2[j, l, rc])
                          + normal_loglik(y_i, eta_rest + beta[j, c] * cur, sigma2[j]))
                ll_prop = (normal_loglik(prop, mu[j, l, rc], tau2[j, l, rc])
                           + normal_loglik(y_i, eta_rest + beta[j, c] * prop, sigma2[j]))
            else:
                ll_cur = (normal_loglik(cur, mu[j, l, rc], tau2[j, l, rc])
                          + logit_loglik(y_i, eta_rest + beta[j, c] * cur))
                ll_prop = (normal_loglik(prop, mu[j, l, rc], tau2[j, l, rc])
                           + logit_loglik(y_i, eta_rest + beta[j, c] * prop))
            counters[3] += 1
            if np.log(rng.random()) < ll_prop - ll_cur:
                X[i, c] = prop
                counters[2] += 1
