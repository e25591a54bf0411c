"""python -m integration: run every reproduction suite"""

import asyncio
from .runner import main

if __name__ == "__main__":
    asyncio.run(main())
