import os
import logging
from dotenv import load_dotenv

load_dotenv()

ENV = os.getenv("ENV", "DEV")
LOG_LEVEL = os.getenv(f"LOG_LEVEL_{ENV}", "INFO")
N_JOBS = int(os.getenv(f"N_JOBS_{ENV}", "1"))
ROOT_PATH = os.getenv(f"ROOT_PATH_{ENV}", "")

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def configure_logging(level: str = LOG_LEVEL) -> None:
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT)
