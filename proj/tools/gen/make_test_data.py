"""Regenerates data/controlled_test_data.json from the fact table below."""
import json
import pathlib

FACTS = {
    "study": dict(
        match=["Shiraz University"],
        info=["I studied at Shiraz University.",
              "After school I studied economics at Shiraz University.",
              "My university studies were at Shiraz University."],
        request=["Where did I study?", "Do you remember where I studied?",
                 "Which university did I study at?"],
        ctx_info=["Let me tell you about my education. I studied at Shiraz University.",
                  "School was never easy for me. Later I studied at Shiraz University."],
        ctx_request=["Let us talk about my education. Where did I study?",
                     "I want to check something about my past. Which university did I study at?"]),
    "work": dict(
        match=["a bakery"],
        info=["I used to work at a bakery.",
              "My last job was at a bakery where I worked early mornings.",
              "For three years I worked at a bakery."],
        request=["Where did I use to work?", "Do you remember where I worked?",
                 "What kind of place did I work at?"],
        ctx_info=["Mornings are my favourite time. I used to work at a bakery.",
                  "Baking bread is an art. For three years I worked at a bakery."],
        ctx_request=["I am thinking about my career. Where did I use to work?",
                     "Something about my past. Where did I work?"]),
    "hometown": dict(
        match=["Malmö"],
        info=["My hometown is Malmö.", "Malmö is my hometown and I love it there.",
              "I was born in my hometown Malmö."],
        request=["What is my hometown?", "Which city is my hometown?",
                 "Do you remember my hometown?"],
        ctx_info=["I travel a lot for fun. My hometown is Malmö.",
                  "Sweden is a beautiful country. My hometown is Malmö."],
        ctx_request=["Let us talk about where I come from. What is my hometown?",
                     "I miss home sometimes. Which city is my hometown?"]),
    "cat": dict(
        match=["Sigge"],
        info=["My cat is called Sigge.", "I have a cat and his name is Sigge.",
              "Sigge is the name of my cat."],
        request=["What is the name of my cat?", "What is my cat called?",
                 "Do you remember my cat's name?"],
        ctx_info=["I love animals. My cat is called Sigge.",
                  "Pets make me happy. My cat is called Sigge."],
        ctx_request=["I want to talk about pets. What is the name of my cat?",
                     "Animals are great. What is my cat called?"]),
    "sport": dict(
        match=["handball"],
        info=["My favourite sport is handball.",
              "I play handball every weekend because it is my favourite sport.",
              "Playing handball is my favourite sport."],
        request=["What is my favourite sport?", "Which sport do I like the most?",
                 "Do you know my favourite sport?"],
        ctx_info=["I try to stay active. My favourite sport is handball.",
                  "I watch a lot of games on TV. My favourite sport is handball."],
        ctx_request=["Let us talk about my free time. What is my favourite sport?",
                     "I try to stay active. Which sport do I like the most?"]),
    "language": dict(
        match=["Arabic"],
        info=["My native language is Arabic.",
              "I grew up speaking Arabic, it is my native language.",
              "Arabic is my native language."],
        request=["What is my native language?", "Which language did I grow up speaking?",
                 "Do you remember my native language?"],
        ctx_info=["I moved to Sweden four years ago. My native language is Arabic.",
                  "Learning Swedish takes time. My native language is Arabic."],
        ctx_request=["I want to talk about languages. What is my native language?",
                     "Swedish is still new to me. Which language did I grow up speaking?"]),
    "job": dict(
        match=["nurse"],
        info=["I am applying for a job as a nurse.", "The job I really want is nurse.",
              "My dream job is to work as a nurse."],
        request=["What job am I applying for?", "Which job do I want?",
                 "What job did I say I want?"],
        ctx_info=["I have thought a lot about my future. My dream job is to work as a nurse.",
                  "Helping people matters to me. My dream job is to work as a nurse."],
        ctx_request=["Let us talk about my career plans. What job am I applying for?",
                     "I am preparing for interviews. Which job do I want?"]),
    "siblings": dict(
        match=["two brothers"],
        info=["I have two brothers.", "In my family I have two brothers and no sisters.",
              "Growing up with two brothers was fun."],
        request=["How many brothers do I have?", "Do you remember how many brothers I have?",
                 "How many brothers did I say I have?"],
        ctx_info=["My family is quite big. I have two brothers.",
                  "Family is important to me. I have two brothers."],
        ctx_request=["Let us talk about my family. How many brothers do I have?",
                     "I called my parents today. How many brothers do I have?"]),
    "drink": dict(
        match=["green tea"],
        info=["My favourite drink is green tea.",
              "I drink green tea every morning, it is my favourite drink.",
              "Hot green tea is my favourite drink."],
        request=["What is my favourite drink?", "Which drink do I like best?",
                 "Do you remember my favourite drink?"],
        ctx_info=["Coffee keeps me awake. My favourite drink is green tea.",
                  "Mornings are busy for me. My favourite drink is green tea."],
        ctx_request=["I am making a cup now. What is my favourite drink?",
                     "Let us talk about breakfast. Which drink do I like best?"]),
    "live": dict(
        match=["Lund"],
        info=["I live in Lund now.", "These days I live in Lund with my family.",
              "I live in Lund, close to the train station."],
        request=["Where do I live?", "Which city do I live in?", "Do you remember where I live?"],
        ctx_info=["I moved last year. I live in Lund now.",
                  "Housing is expensive in Sweden. I live in Lund now."],
        ctx_request=["Let us talk about my home. Where do I live?",
                     "I am looking for a new flat. Which city do I live in?"]),
    "hobby": dict(
        match=["painting"],
        info=["My hobby is painting.", "Oil painting is my favourite hobby.",
              "In my free time my hobby is painting."],
        request=["What is my hobby?", "Which hobby do I have?", "Do you remember my hobby?"],
        ctx_info=["I need to relax after work. My hobby is painting.",
                  "Weekends are quiet for me. My hobby is painting."],
        ctx_request=["Let us talk about my free time. What is my hobby?",
                     "I have a lot of spare time. Which hobby do I have?"]),
    "car": dict(
        match=["a Volvo"],
        info=["I drive a Volvo.", "My car is a Volvo.", "I drive a Volvo car to work."],
        request=["What car do I drive?", "Which car do I drive?",
                 "Do you remember what car I drive?"],
        ctx_info=["Getting to work takes time. I drive a Volvo.",
                  "I live far from the city. I drive a Volvo."],
        ctx_request=["Let us talk about transport. What car do I drive?",
                     "I commute every day. Which car do I drive?"]),
}

CLOSED = {
    "people": dict(polarity="yes",
                   info=["I am really good at working with people.",
                         "Working with people is one of my strengths.",
                         "I enjoy working with people and I am good at it."],
                   request=["Am I good at working with people?", "Do I work well with people?"]),
    "licence": dict(polarity="yes",
                    info=["I have a driving licence.", "I got my driving licence last year."],
                    request=["Do I have a driving licence?", "Do I have a licence to drive?"]),
    "shop": dict(polarity="no",
                 info=["No, I have never worked in a shop.",
                       "Unfortunately not, I have no experience working in a shop."],
                 request=["Have I worked in a shop before?",
                          "Do I have experience working in a shop?"]),
    "night": dict(polarity="no",
                  info=["No, I cannot work night shifts.",
                        "Night shifts are not possible for me, no."],
                  request=["Can I work night shifts?", "Am I able to work night shifts?"]),
}

ASSIGN = {
    "I5": ["study", "work", "hometown", "cat", "sport", "people"],
    "I8": ["language", "job", "siblings", "drink", "live", "licence"],
    "I9": ["study", "hometown", "cat", "drink", "hobby"],
    "I10": ["work", "sport", "live", "car", "shop", "night"],
    "I11": ["language", "job", "siblings", "hobby", "car"],
    "U3": ["study", "work", "hometown", "drink", "car"],
    "U4": ["cat", "sport", "language", "live", "hobby"],
    "U5": ["study", "job", "siblings", "drink", "car"],
    "U6": ["work", "hometown", "sport", "live", "hobby"],
}


def item(req, name):
    pid = f"{req}-{name}"
    if name in CLOSED:
        c = CLOSED[name]
        return {"payload_id": pid, "requirement_id": req, "mode": "closed",
                "info_prompts": c["info"], "request_prompts": c["request"],
                "expected": {"expected_polarity": c["polarity"]}}
    f = FACTS[name]
    out = {"payload_id": pid, "requirement_id": req, "mode": "open",
           "info_prompts": f["info"], "request_prompts": f["request"],
           "expected": {"match_values": f["match"]}}
    if req in ("I9", "I11"):
        out["context_variants"] = {"info": f["ctx_info"], "request": f["ctx_request"]}
    return out


doc = {
    "qa_items": [item(req, name) for req, names in ASSIGN.items() for name in names],
    "no_list": ["no", "nope", "no,", "not really", "i don't think so", "i do not think so",
                "unfortunately not"],
    "self_questions": [
        {"payload_id": "I1-name",
         "prompts": ["What is your name?", "What should I call you?", "Can you tell me your name?"]},
        {"payload_id": "I1-home", "prompts": ["Where do you live?", "Which city do you live in?"]},
        {"payload_id": "I1-job", "prompts": ["What do you do for a living?", "What is your job?"]},
        {"payload_id": "I1-age", "prompts": ["How old are you?", "What is your age?"]},
        {"payload_id": "I1-food",
         "prompts": ["What is your favourite food?", "Which food do you like the most?"]},
    ],
}

root = pathlib.Path(__file__).resolve().parents[2]
(root / "data" / "controlled_test_data.json").write_text(
    json.dumps(doc, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
