from dataclasses import dataclass

import pytest
from dotenv import load_dotenv

from shardlab.engine.coxeter import CoxeterGroup, build_group
from shardlab.engine.shardorder import ShardOrder
from shardlab.engine.shards import Shards
from shardlab.engine.weakorder import WeakOrder

# Load environment variables
load_dotenv()


@dataclass
class Built:
    group: CoxeterGroup
    weak: WeakOrder
    shards: Shards
    order: ShardOrder

    def element(self, text: str) -> int:
        return self.group.parse_element(text)


def build(type_name: str) -> Built:
    group = build_group(type_name)
    weak = WeakOrder(group)
    shards = Shards(weak)
    return Built(group, weak, shards, ShardOrder(shards))


@pytest.fixture(scope="session")
def a1() -> Built:
    return build("A1")


@pytest.fixture(scope="session")
def a2() -> Built:
    return build("A2")


@pytest.fixture(scope="session")
def a3() -> Built:
    return build("A3")


@pytest.fixture(scope="session")
def b2() -> Built:
    return build("B2")


@pytest.fixture(scope="session")
def b3() -> Built:
    return build("B3")


@pytest.fixture(scope="session")
def i25() -> Built:
    return build("I2(5)")


@pytest.fixture(scope="session")
def a1xa1() -> Built:
    return build("A1xA1")


@pytest.fixture(scope="session")
def a1xa1xa1() -> Built:
    return build("A1xA1xA1")


@pytest.fixture(scope="session", params=range(2, 9), ids=lambda m: f"I2({m})")
def dihedral(request) -> Built:
    return build(f"I2({request.param})")
