# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_purepy``; results must match exactly."""

from libc.stdint cimport uint64_t

cdef int WALL = 35
cdef int PILL = 46
cdef int POWERPILL = 111
cdef int[4] SX = [-1, 0, 0, 1]
cdef int[4] SY = [0, -1, 1, 0]
DEF MAX_GHOSTS = 8


cdef inline uint64_t _mix(uint64_t* state) nogil:
    state[0] += <uint64_t>0x9E3779B97F4A7C15ULL
    cdef uint64_t z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9ULL
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EBULL
    return z ^ (z >> 31)


def splitmix64(state):
    cdef uint64_t s = state
    cdef uint64_t z = _mix(&s)
    return z, s


cdef inline int _pick(int n_fav, int n_other, double weight, double u) nogil:
    cdef int i, n
    if n_fav > 0 and n_other > 0:
        if u < weight:
            i = <int>(u / weight * n_fav)
            return i if i < n_fav else n_fav - 1
        i = <int>((u - weight) / (1.0 - weight) * n_other)
        return n_fav + (i if i < n_other else n_other - 1)
    n = n_fav + n_other
    i = <int>(u * n)
    return i if i < n else n - 1


cdef void _ghosts(const unsigned char* g, int width, int height, int px, int py, int ng, int* gxy,
                  bint powered, double weight, uint64_t* rng, int* out) noexcept nogil:
    cdef int k, j, gx, gy, nx, ny, here, d, nf, no, n, sel
    cdef int[4] fx, fy, ox, oy
    cdef bint favoured
    cdef double u
    for k in range(ng):
        gx = gxy[2 * k]
        gy = gxy[2 * k + 1]
        here = abs(gx - px) + abs(gy - py)
        nf = 0
        no = 0
        for j in range(4):
            nx = gx + SX[j]
            ny = gy + SY[j]
            if nx < 0 or ny < 0 or nx >= width or ny >= height or g[ny * width + nx] == WALL:
                continue
            d = abs(nx - px) + abs(ny - py)
            favoured = (d > here) if powered else (d < here)
            if favoured:
                fx[nf] = nx
                fy[nf] = ny
                nf += 1
            else:
                ox[no] = nx
                oy[no] = ny
                no += 1
        n = nf + no
        if n == 0:
            out[2 * k] = gx
            out[2 * k + 1] = gy
            continue
        if n == 1:
            sel = 0
        else:
            u = (_mix(rng) >> 11) * (1.0 / 9007199254740992.0)
            sel = _pick(nf, no, weight, u)
        if sel < nf:
            out[2 * k] = fx[sel]
            out[2 * k + 1] = fy[sel]
        else:
            out[2 * k] = ox[sel - nf]
            out[2 * k + 1] = oy[sel - nf]


cdef int _load(grid, int width, int height, ghosts, int* gxy) except -1:
    cdef int k
    cdef int n = len(ghosts)
    if len(grid) != width * height:
        raise ValueError("grid size does not match width * height")
    if n > MAX_GHOSTS:
        raise ValueError(f"at most {MAX_GHOSTS} ghosts supported")
    for k in range(n):
        gxy[2 * k] = ghosts[k][0]
        gxy[2 * k + 1] = ghosts[k][1]
        if not (0 <= gxy[2 * k] < width and 0 <= gxy[2 * k + 1] < height):
            raise ValueError("ghost outside the grid")
    return n


def ghost_policy(bytes grid, int width, int height, pac, ghosts, bint powered, double weight, rng):
    cdef uint64_t r = rng
    cdef int[2 * MAX_GHOSTS] gxy
    cdef int[2 * MAX_GHOSTS] out
    cdef int k
    cdef int n = _load(grid, width, height, ghosts, gxy)
    _ghosts(grid, width, height, pac[0], pac[1], n, gxy, powered, weight, &r, out)
    return tuple([(out[2 * k], out[2 * k + 1]) for k in range(n)]), r


def tick(bytes grid, int width, int height, pac, ghosts, pac_home, ghost_homes, bint powered,
         int timer, long points, int lives, int eat_index, int dx, int dy, int power_ticks,
         double weight, rng, ghost_fn=None):
    cdef int ox = pac[0]
    cdef int oy = pac[1]
    cdef int x = ox + dx
    cdef int y = oy + dy
    cdef int idx, cell, k
    cdef bint fresh = False
    cdef uint64_t r
    cdef int[2 * MAX_GHOSTS] gxy
    cdef int[2 * MAX_GHOSTS] nxy
    cdef int ng = _load(grid, width, height, ghosts, gxy)
    if len(ghost_homes) != ng:
        raise ValueError("one home per ghost required")
    if x < 0 or y < 0 or x >= width or y >= height:
        return None
    idx = y * width + x
    cell = grid[idx]
    if cell == WALL:
        return None
    if cell == PILL:
        points += 5
        grid = grid[:idx] + b" " + grid[idx + 1:]
    elif cell == POWERPILL:
        points += 10
        grid = grid[:idx] + b" " + grid[idx + 1:]
        powered = True
        timer = power_ticks
        eat_index = 0
        fresh = True
    if ghost_fn is None:
        r = rng
        _ghosts(grid, width, height, x, y, ng, gxy, powered, weight, &r, nxy)
        rng = r
    else:
        moved, rng = ghost_fn(grid, (x, y), ghosts, powered, rng)
        if len(moved) != ng:
            raise ValueError("ghost driver must move every ghost")
        for k in range(ng):
            nxy[2 * k] = moved[k][0]
            nxy[2 * k + 1] = moved[k][1]
    cdef int px = x
    cdef int py = y
    for k in range(ng):
        if (nxy[2 * k] == px and nxy[2 * k + 1] == py) or (
                nxy[2 * k] == ox and nxy[2 * k + 1] == oy
                and gxy[2 * k] == px and gxy[2 * k + 1] == py):
            if powered:
                if eat_index < 4:
                    eat_index += 1
                points += 50 * eat_index
                nxy[2 * k] = ghost_homes[k][0]
                nxy[2 * k + 1] = ghost_homes[k][1]
            else:
                lives -= 1
                px = pac_home[0]
                py = pac_home[1]
                for k in range(ng):
                    nxy[2 * k] = ghost_homes[k][0]
                    nxy[2 * k + 1] = ghost_homes[k][1]
                break
    if powered and not fresh:
        timer -= 1
        if timer == 0:
            powered = False
            eat_index = 0
    new_ghosts = tuple([(nxy[2 * k], nxy[2 * k + 1]) for k in range(ng)])
    return grid, (px, py), new_ghosts, bool(powered), timer, points, lives, eat_index, rng


def segment_runs(starts, windows, preds):
    cdef Py_ssize_t n = len(starts)
    cdef Py_ssize_t t
    cdef Py_ssize_t open_at = -1
    cdef Py_ssize_t run_at = -1
    spans = []
    runs = []
    for t in range(n):
        if starts[t]:
            if open_at >= 0:
                if run_at >= 0:
                    runs.append((run_at, t - 1))
                    run_at = -1
                spans.append((open_at, t - 1))
            open_at = t
        elif open_at >= 0 and not windows[t]:
            if run_at >= 0:
                runs.append((run_at, t - 1))
                run_at = -1
            spans.append((open_at, t - 1))
            open_at = -1
        if open_at >= 0:
            if preds[t]:
                if run_at < 0:
                    run_at = t
            elif run_at >= 0:
                runs.append((run_at, t - 1))
                run_at = -1
    if open_at >= 0:
        if run_at >= 0:
            runs.append((run_at, n - 1))
        spans.append((open_at, n - 1))
    return spans, runs
