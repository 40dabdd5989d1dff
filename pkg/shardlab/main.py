import logging

import uvicorn
from dotenv import load_dotenv
from fastapi import FastAPI, HTTPException

from shardlab.api.models import CheckResponse, ExportResponse, RunConfig
from shardlab.config.settings import settings, setup_logging
from shardlab.engine.errors import ShardlabError, UnknownTarget
from shardlab.services.build_service import BuildService
from shardlab.services.export_service import ExportService
from shardlab.services.verify_service import VerifyService

# Set up logging
setup_logging()
logger = logging.getLogger(__name__)

# Load environment variables
load_dotenv()

try:
    # Initialize FastAPI app
    app = FastAPI(title="shardlab", description="Shards, shard intersection orders and noncrossing partitions of finite Coxeter groups")

    # Initialize services
    try:
        settings.validate()
        build_service = BuildService()
        verify_service = VerifyService(build_service)
        export_service = ExportService(build_service)
        logger.info("Services initialized successfully")
    except Exception as e:
        logger.error(f"Failed to initialize services: {e}")
        raise

    @app.get("/api/health")
    async def health_check():
        """Health check endpoint"""
        return {"status": "healthy"}

    @app.post("/api/build")
    def build(config: RunConfig):
        """Build the bundle summary for one configuration"""
        try:
            return build_service.build(config).to_dict()
        except (ShardlabError, ValueError) as e:
            logger.warning(f"Rejected build for {config.name}: {e}")
            raise HTTPException(status_code=400, detail=str(e))
        except Exception as e:
            logger.error(f"Error building {config.name}: {e}", exc_info=True)
            raise HTTPException(status_code=500, detail="Error building bundle")

    @app.post("/api/verify", response_model=CheckResponse)
    def verify(config: RunConfig):
        """Run every applicable theorem check"""
        try:
            checks = verify_service.run(config)
            return CheckResponse(passed=all(c.passed for c in checks), checks=[c.to_dict() for c in checks])
        except (ShardlabError, ValueError) as e:
            logger.warning(f"Rejected verify for {config.name}: {e}")
            raise HTTPException(status_code=400, detail=str(e))
        except Exception as e:
            logger.error(f"Error verifying {config.name}: {e}", exc_info=True)
            raise HTTPException(status_code=500, detail="Error running checks")

    @app.post("/api/export/{target}", response_model=ExportResponse)
    def export(target: str, config: RunConfig):
        """Export a poset, the shard digraph or the triangulation as DOT, JSON or text"""
        try:
            content = export_service.export(config, target)
            return ExportResponse(target=target, format=config.format, content=content)
        except UnknownTarget as e:
            raise HTTPException(status_code=404, detail=str(e))
        except (ShardlabError, ValueError) as e:
            logger.warning(f"Rejected export of {target}: {e}")
            raise HTTPException(status_code=400, detail=str(e))
        except Exception as e:
            logger.error(f"Error exporting {target}: {e}", exc_info=True)
            raise HTTPException(status_code=500, detail="Error exporting")

    if __name__ == "__main__":
        uvicorn.run("shardlab.main:app", host=settings.HOST, port=settings.PORT, reload=True)

except Exception as e:
    logger.error(f"Failed to initialize application: {e}")
    raise
