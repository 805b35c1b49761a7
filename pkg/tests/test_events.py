from __future__ import annotations

import pytest

from pathway_engine.events import (EVENT_TYPES, EventOntology,
                                   default_ontology, extract_events,
                                   select_representative_opinion)
from pathway_engine.influence import CommunityAssignment
from pathway_engine.pathway import build_user_pathway

# three crafted sentences per event type; each contains exactly one trigger
FIXTURE_SENTENCES: list[tuple[str, str, str]] = [
    ("end_organization", "US will withdraw from WHO next year", "withdraw from"),
    ("end_organization", "The senate voted to defund the agency", "defund"),
    ("end_organization", "Parliament dissolved the task force", "dissolved"),
    ("social_distancing", "Shoppers must keep six feet apart in stores",
     "six feet apart"),
    ("social_distancing", "Social distancing remains mandatory on trains",
     "Social distancing"),
    ("social_distancing", "Visitors should socially distance inside the museum",
     "socially distance"),
    ("lock_down", "The city will lock down tomorrow", "lock down"),
    ("lock_down", "Paris entered a strict lockdown on Monday", "lockdown"),
    ("lock_down", "A nightly curfew starts this week", "curfew"),
    ("quarantine", "Officials quarantined tourists at Heathrow", "quarantined"),
    ("quarantine", "Travelers must self-isolate for ten days", "self-isolate"),
    ("quarantine", "Quarantine rules apply to arriving passengers", "Quarantine"),
    ("vaccinate", "France vaccinated thousands of nurses in Lyon", "vaccinated"),
    ("vaccinate", "Clinics will inoculate seniors first", "inoculate"),
    ("vaccinate", "Vaccination drives expanded across Brazil", "Vaccination"),
    ("die", "Nurses died in Rome on Monday", "died"),
    ("die", "Officials reported rising deaths in April", "deaths"),
    ("die", "Two residents passed away at the clinic", "passed away"),
    ("fine", "Italy fined travelers 400 euros", "fined"),
    ("fine", "Police penalized vendors in Madrid", "penalized"),
    ("fine", "Courts may fine organizers 50 dollars", "fine"),
    ("transport", "Doctors evacuated patients at dawn", "evacuated"),
    ("transport", "The army airlifted supplies into Manaus", "airlifted"),
    ("transport", "Ships transported grain across the strait", "transported"),
    ("extradite", "Spain extradited the suspect to France", "extradited"),
    ("extradite", "Judges approved the extradition on Friday", "extradition"),
    ("extradite", "Courts may extradite smugglers next month", "extradite"),
]


class TestOntology:
    def test_covers_all_nine_types(self):
        onto = default_ontology()
        assert set(onto.triggers) == set(EVENT_TYPES)

    def test_lexicons_disjoint_across_types(self):
        onto = default_ontology()
        seen = {}
        for etype, phrases in onto.triggers.items():
            for phrase in phrases:
                assert phrase not in seen, (phrase, seen.get(phrase), etype)
                seen[phrase] = etype

    def test_json_round_trip(self, tmp_path):
        path = tmp_path / "ontology.json"
        onto = default_ontology()
        onto.to_json(path)
        back = EventOntology.from_json(path)
        assert back.triggers == onto.triggers
        assert back.roles == onto.roles

    def test_cross_type_duplicate_rejected(self):
        onto = default_ontology()
        bad = dict(onto.triggers)
        bad["fine"] = bad["fine"] + ("lockdown",)
        with pytest.raises(ValueError):
            EventOntology(triggers=bad, roles=onto.roles).validate()


class TestTriggerFixtures:
    @pytest.mark.parametrize("etype,sentence,trigger", FIXTURE_SENTENCES)
    def test_exactly_one_mention(self, etype, sentence, trigger):
        mentions = extract_events(default_ontology(), sentence)
        assert len(mentions) == 1, (sentence, [m.trigger.text for m in mentions])
        mention = mentions[0]
        assert mention.event_type == etype
        assert mention.trigger.text == trigger

    @pytest.mark.parametrize("etype,sentence,trigger", FIXTURE_SENTENCES)
    def test_spans_reproduce_surface(self, etype, sentence, trigger):
        for mention in extract_events(default_ontology(), sentence):
            surf = sentence[mention.trigger.start:mention.trigger.end]
            assert surf == mention.trigger.text
            for arg in mention.arguments:
                assert sentence[arg.span.start:arg.span.end] == arg.span.text

    def test_trigger_precision_recall_one(self):
        onto = default_ontology()
        tp = fp = fn = 0
        for etype, sentence, trigger in FIXTURE_SENTENCES:
            got = {(m.event_type, m.trigger.text.lower())
                   for m in extract_events(onto, sentence)}
            want = {(etype, trigger.lower())}
            tp += len(got & want)
            fp += len(got - want)
            fn += len(want - got)
        assert fp == 0 and fn == 0 and tp == len(FIXTURE_SENTENCES)


class TestArguments:
    def test_fine_sentence_roles(self):
        mentions = extract_events(default_ontology(),
                                  "Italy fined travelers 400 euros")
        (mention,) = mentions
        roles = {a.role: a.span.text for a in mention.arguments}
        assert roles["agent"] == "Italy"
        assert roles["patient"] == "travelers"
        assert roles["amount"] == "400"

    def test_organization_role(self):
        (mention,) = extract_events(default_ontology(),
                                    "US will withdraw from WHO next year")
        roles = {a.role: a.span.text for a in mention.arguments}
        assert roles["agent"] == "US"
        assert roles["organization"] == "WHO"

    def test_place_and_time(self):
        (mention,) = extract_events(default_ontology(),
                                    "Nurses died in Rome on Monday")
        roles = {a.role: a.span.text for a in mention.arguments}
        assert roles["patient"] == "Nurses"
        assert roles["place"] == "Rome"
        assert roles["time"] == "Monday"

    def test_roles_restricted_to_type_inventory(self):
        onto = default_ontology()
        for _, sentence, _ in FIXTURE_SENTENCES:
            for mention in extract_events(onto, sentence):
                allowed = set(onto.roles[mention.event_type])
                assert {a.role for a in mention.arguments} <= allowed


class TestCompositionality:
    def test_no_triggers_empty(self):
        assert extract_events(default_ontology(), "nothing happened there") == []

    def test_empty_text(self):
        assert extract_events(default_ontology(), "") == []

    def test_idempotent(self):
        text = "Italy fined travelers 400 euros"
        first = [m.to_dict() for m in extract_events(default_ontology(), text)]
        second = [m.to_dict() for m in extract_events(default_ontology(), text)]
        assert first == second

    def test_concatenation_is_union_with_shifted_offsets(self):
        onto = default_ontology()
        pairs = [(FIXTURE_SENTENCES[i][1], FIXTURE_SENTENCES[i + 9][1])
                 for i in range(0, 18, 3)]
        for s1, s2 in pairs:
            joined = s1 + ". " + s2
            got = extract_events(onto, joined)
            first = extract_events(onto, s1)
            second = extract_events(onto, s2)
            assert len(got) == len(first) + len(second)
            shift = len(s1) + 2
            want_triggers = ([(m.event_type, m.trigger.start, m.trigger.end)
                              for m in first]
                             + [(m.event_type, m.trigger.start + shift,
                                 m.trigger.end + shift) for m in second])
            assert [(m.event_type, m.trigger.start, m.trigger.end)
                    for m in got] == want_triggers
            for mention in got:
                assert joined[mention.trigger.start:mention.trigger.end] == \
                    mention.trigger.text

    def test_multi_event_sentence(self):
        text = "Italy fined travelers 400 euros and the city will lock down tomorrow"
        mentions = extract_events(default_ontology(), text)
        assert [m.event_type for m in mentions] == ["fine", "lock_down"]


class TestRepresentativeOpinion:
    def test_max_like_downstream(self, fixture_corpus):
        pathway = build_user_pathway(fixture_corpus,
                                     "https://orga.example/lockdown-extended")
        assignment = CommunityAssignment.from_map(
            {"alice": "A", "bob": "A", "carol": "A"})
        opinion = select_representative_opinion(fixture_corpus, pathway,
                                                assignment, "A")
        assert opinion.post_id == "p2"  # 9 likes beats 5
        assert opinion.like_count == 9

    def test_never_a_source_post(self, fixture_corpus):
        pathway = build_user_pathway(fixture_corpus,
                                     "https://orga.example/lockdown-extended")
        assignment = CommunityAssignment.from_map({"alice": "A"})
        # alice authored only the source post
        assert select_representative_opinion(fixture_corpus, pathway,
                                             assignment, "A") is None

    def test_tie_breaks_to_earlier_timestamp(self, fixture_corpus):
        fixture_corpus.posts["p2"].like_count = 5  # tie with p3 at 5
        pathway = build_user_pathway(fixture_corpus,
                                     "https://orga.example/lockdown-extended")
        assignment = CommunityAssignment.from_map(
            {"bob": "A", "carol": "A"})
        opinion = select_representative_opinion(fixture_corpus, pathway,
                                                assignment, "A")
        assert opinion.post_id == "p2"  # timestamp 1200 < 1300

    def test_absent_community_none(self, fixture_corpus):
        pathway = build_user_pathway(fixture_corpus,
                                     "https://orga.example/lockdown-extended")
        assignment = CommunityAssignment.from_map({"dave": "B"})
        assert select_representative_opinion(fixture_corpus, pathway,
                                             assignment, "B") is None

    def test_synthetic_opinions_are_downstream_members(self, corpus42,
                                                       assignment42):
        corpus, _ = corpus42
        url = sorted(corpus.articles)[0]
        pathway = build_user_pathway(corpus, url)
        for community in sorted(assignment42.members):
            opinion = select_representative_opinion(corpus, pathway,
                                                    assignment42, community)
            if opinion is None:
                continue
            post = corpus.posts[opinion.post_id]
            assert post.kind != "source"
            assert assignment42.by_user[post.author_id] == community
