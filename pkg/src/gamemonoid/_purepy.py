"""Pure-Python kernels. ``_speedups.pyx`` mirrors these bit for bit."""

MASK64 = 0xFFFFFFFFFFFFFFFF
WALL = 35  # ord("#")
PILL = 46  # ord(".")
POWERPILL = 111  # ord("o")
EMPTY = 32  # ord(" ")

# neighbour order matches the alphabet order L, U, D, R
STEPS = ((-1, 0), (0, -1), (0, 1), (1, 0))


def splitmix64(state):
    """Return ``(output, next_state)`` of the splitmix64 generator."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31), state


def uniform(state):
    z, state = splitmix64(state)
    return (z >> 11) * (1.0 / 9007199254740992.0), state


def pick(n_fav, n_other, weight, u):
    """Index into favoured + other moves for one uniform draw ``u``."""
    if n_fav and n_other:
        if u < weight:
            i = int(u / weight * n_fav)
            return min(i, n_fav - 1)
        i = int((u - weight) / (1.0 - weight) * n_other)
        return n_fav + min(i, n_other - 1)
    n = n_fav + n_other
    return min(int(u * n), n - 1)


def ghost_policy(grid, width, height, pac, ghosts, powered, weight, rng):
    px, py = pac
    out = []
    for gx, gy in ghosts:
        here = abs(gx - px) + abs(gy - py)
        fav = []
        other = []
        for dx, dy in STEPS:
            nx = gx + dx
            ny = gy + dy
            if nx < 0 or ny < 0 or nx >= width or ny >= height or grid[ny * width + nx] == WALL:
                continue
            d = abs(nx - px) + abs(ny - py)
            if (d > here) if powered else (d < here):
                fav.append((nx, ny))
            else:
                other.append((nx, ny))
        n = len(fav) + len(other)
        if n == 0:
            out.append((gx, gy))
        elif n == 1:
            out.append((fav + other)[0])
        else:
            u, rng = uniform(rng)
            out.append((fav + other)[pick(len(fav), len(other), weight, u)])
    return tuple(out), rng


def tick(grid, width, height, pac, ghosts, pac_home, ghost_homes, powered, timer, points, lives,
         eat_index, dx, dy, power_ticks, weight, rng, ghost_fn=None):
    """Advance one tick. ``None`` if Pac-Man would walk into a wall or off the grid.

    Order: Pac-Man moves and consumes, ghosts move, collisions resolve, timer runs down.
    """
    x = pac[0] + dx
    y = pac[1] + dy
    if x < 0 or y < 0 or x >= width or y >= height:
        return None
    idx = y * width + x
    cell = grid[idx]
    if cell == WALL:
        return None
    fresh = False
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
    new_pac = (x, y)
    if ghost_fn is None:
        new_ghosts, rng = ghost_policy(grid, width, height, new_pac, ghosts, powered, weight, rng)
    else:
        new_ghosts, rng = ghost_fn(grid, new_pac, ghosts, powered, rng)
    new_ghosts = list(new_ghosts)
    if len(new_ghosts) != len(ghosts):
        raise ValueError("ghost driver must move every ghost")
    for i in range(len(new_ghosts)):
        g = new_ghosts[i]
        if g == new_pac or (g == pac and ghosts[i] == new_pac):
            if powered:
                if eat_index < 4:
                    eat_index += 1
                points += 50 * eat_index
                new_ghosts[i] = ghost_homes[i]
            else:
                lives -= 1
                new_pac = pac_home
                new_ghosts = list(ghost_homes)
                break
    if powered and not fresh:
        timer -= 1
        if timer == 0:
            powered = False
            eat_index = 0
    return grid, new_pac, tuple(new_ghosts), powered, timer, points, lives, eat_index, rng


def segment_runs(starts, windows, preds):
    """Windows opened by ``starts`` and maximal ``preds`` runs inside them.

    A window opens (or restarts) on any tick where ``starts`` holds and stays
    open while ``windows`` holds.  Returns two lists of inclusive ``(a, b)``.
    """
    spans = []
    runs = []
    n = len(starts)
    open_at = -1
    run_at = -1
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
