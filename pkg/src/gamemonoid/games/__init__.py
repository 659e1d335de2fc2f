from .maze import MazeError, MazeSpec, default_maze, load_maze, resolve_maze
from .pacman import PMState, behavlet_a1, ghost_policy, manhattan, pacman_model
from .tictactoe import MAGIC, TTTState, ttt_model, ttt_tactics, ttt_winner

__all__ = [
    "MAGIC", "MazeError", "MazeSpec", "PMState", "TTTState", "behavlet_a1", "default_maze", "ghost_policy",
    "load_maze", "manhattan", "pacman_model", "resolve_maze", "ttt_model", "ttt_tactics", "ttt_winner",
]
