import logging
import sys


class ColorizedFormatter(logging.Formatter):
    color_map = {
        'black': "\033[0;30m",
        'red': "\033[0;31m",
        'bold_red': "\033[1;31m",
        'green': "\033[0;32m",
        'yellow': "\033[1;33m",
        'blue': "\033[0;34m",
        'reset': "\033[0m",
    }

    level_to_color = {
        logging.DEBUG: 'blue',
        logging.INFO: 'green',
        logging.WARNING: 'yellow',
        logging.ERROR: 'red',
        logging.CRITICAL: 'bold_red'
    }

    def __init__(self, colorize=True):
        super().__init__()
        self.colorize = colorize

    def color_formatter(self, color):
        fmt = "[%(asctime)s] [%(levelname)s] %(message)s"
        datefmt = "%H:%M:%S"
        if not self.colorize:
            return logging.Formatter(fmt, datefmt)
        return logging.Formatter(self.color_map[color] + fmt + self.color_map['reset'], datefmt)

    def format(self, record):
        return self.color_formatter(self.level_to_color.get(record.levelno, 'reset')).format(record)


logger = logging.getLogger('chyperbolic')
logger.setLevel(logging.INFO)

# stdout carries CSV/JSON output of the CLI
handler = logging.StreamHandler(sys.stderr)
handler.setFormatter(ColorizedFormatter(colorize=sys.stderr.isatty()))
logger.addHandler(handler)
logger.propagate = False


def set_verbosity(verbose: bool):
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
