"""
This script checks the setup of your environment. It reads the .env file, shows the settings compnet will use and
solves a small stacking problem to confirm numpy and scipy work.

If a setting is invalid the script prints the exception that is raised, so you can see what went wrong.
"""
import logging

import numpy as np
from dotenv import load_dotenv

from compnet.core.output_vector import OutputVector
from compnet.stacking.stacker import stack
from compnet.util.config_loader import ConfigLoader


def main():
    try:
        logger.info(f"Seed: {config_loader.get_seed()}, workers: {config_loader.get_workers()}, "
                    f"output directory: {config_loader.get_out_dir()}")

        rng = np.random.default_rng(config_loader.get_seed())
        targets = rng.normal(size=20)
        outputs = [OutputVector.ones(20), OutputVector(rng.normal(size=20)), OutputVector(rng.normal(size=20))]
        solution = stack(outputs, targets)
        logger.info(f"Solved a test stack, your environment is set up correctly: {solution}")

    except Exception as e:
        logger.error("Problem loading environment, check your .env file")
        logger.error(f"Problem is of type: {type(e).__name__}")


if __name__ == '__main__':
    # Load environment variables from .env file
    load_dotenv()
    config_loader = ConfigLoader()

    # Configure logging
    logging.basicConfig(level=logging.WARNING, format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')
    logger = logging.getLogger(__name__)
    logger.setLevel(logging.INFO)

    main()
