import json
import os

import pytest

import birs

FIXTURES = os.environ.get("BIRS_FIXTURES", os.path.join(os.path.dirname(__file__), "..", "..", "tests", "fixtures"))

SPF = """ISO-10303-21;
HEADER;
FILE_DESCRIPTION((''),'2;1');
FILE_NAME('t.ifc','2021-01-01T00:00:00',(''),(''),'','','');
FILE_SCHEMA(('IFC4'));
ENDSEC;
DATA;
#1=IFCCARTESIANPOINT((0.,0.,0.));
#2 = IFCDIRECTION ( ( 1. , 0. , 0. ) ) ;
ENDSEC;
END-ISO-10303-21;
"""


@pytest.fixture(scope="module")
def pipeline():
    return birs.Pipeline(os.path.join(FIXTURES, "config.json"))


def test_spf_canonical_is_a_fixed_point():
    canon = birs.canonical_spf(SPF)
    assert birs.canonical_spf(canon) == canon
    assert birs.entity_count(SPF) == 2


def test_errors_carry_a_code():
    with pytest.raises(birs.BirsError) as info:
        birs.canonical_spf("ISO-10303-21;\nDATA;\n#1=IFCWALL(;\n")
    assert info.value.code
    with pytest.raises(birs.BirsError) as info:
        birs.parse_date_roundtrip("2021-02-30")
    assert info.value.code == "BadDate"


def test_taxonomy():
    edges = birs.taxonomy_edges()
    assert ("ifc:IfcWall", "ifc:IfcBuildingElement") in edges
    assert len(edges) == len(set(edges))
    assert birs.is_subclass_of("ifc:IfcWall", "birs:Landmark")
    assert birs.is_subclass_of("mdr:OccupancyGridMap", "mdr:Map")
    assert not birs.is_subclass_of("mdr:Map", "mdr:OccupancyGridMap")


def test_pipeline_rooms_and_route(pipeline):
    assert len(pipeline.room_names()) == 9
    route = pipeline.plan("CORRIDOR OUEST 2019", "W.C. HOMMES 2002")
    assert route.startswith("ROUTE 7 ")
    assert '"HALL 2044"' in route
    assert pipeline.topo_text().startswith("BIRS-TOPO 1\n")
    assert "rdfs:subClassOf" in pipeline.ntriples()


def test_pipeline_requests(pipeline):
    hall = pipeline.request("locate", {"x": 12.0, "y": 9.0})
    assert hall["name"] == "HALL 2044"
    info = pipeline.request("room_info", {"name": "HALL 2044"})
    assert info["global_id"] == hall["global_id"]
    with open(os.path.join(FIXTURES, "expected.json")) as f:
        guids = json.load(f)["guids"]
    assert pipeline.request("material", {"element_global_id": guids["CW01"]})["sensor_visible"] is False
    with pytest.raises(birs.BirsError) as info:
        pipeline.request("dance")
    assert info.value.code == "unknown_op"


def test_report_on_uc3():
    p = birs.Pipeline(os.path.join(FIXTURES, "uc3", "config.json"))
    lines = p.report("2021-04-15").splitlines()
    assert lines[0] == "FINDINGS 2"
    assert sum("AheadOfSchedule" in l for l in lines) == 2
