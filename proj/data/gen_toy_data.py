#!/usr/bin/env python3
"""Regenerates the bundled toy resources in this directory.

Annotation of the toy corpus is derived mechanically: phrase boundaries from
the phrase marks below, nucleus labels from the sandhi table. Output is
deterministic.
"""
import os

HERE = os.path.dirname(os.path.abspath(__file__))

# context ids
BOS, NOUN, VERB, ADJ, ADV, PART, AUX, PREFIX, ADN = range(9)
POS_ID = {
    "noun": NOUN, "noun-proper": NOUN, "verb": VERB, "adjective": ADJ,
    "adverb": ADV, "particle": PART, "auxiliary": AUX, "prefix": PREFIX,
    "adnominal": ADN,
}

# surface, pos, pronunciation, accent, combination type,
# conjugation form, conjugation type, word type
WORDS = [
    ("京都", "noun-proper", "キョート", 1, "C3", "*", "*", "固"),
    ("東京", "noun-proper", "トーキョー", 0, "C3", "*", "*", "固"),
    ("大阪", "noun-proper", "オーサカ", 0, "C3", "*", "*", "固"),
    ("日本", "noun-proper", "ニホン", 2, "C3", "*", "*", "固"),
    ("タワー", "noun", "タワー", 1, "C1", "*", "*", "外"),
    ("大学", "noun", "ダイガク", 0, "C1", "*", "*", "漢"),
    ("料理", "noun", "リョーリ", 1, "C1", "*", "*", "漢"),
    ("会社", "noun", "カイシャ", 0, "C2", "*", "*", "漢"),
    ("上空", "noun", "ジョークー", 0, "C3", "*", "*", "漢"),
    ("方", "noun", "ホー", 1, "C3", "*", "*", "漢"),
    ("方", "noun", "カタ", 2, "C3", "*", "*", "和"),
    ("雲", "noun", "クモ", 1, "C3", "*", "*", "和"),
    ("駅", "noun", "エキ", 1, "C3", "*", "*", "漢"),
    ("山", "noun", "ヤマ", 2, "C3", "*", "*", "和"),
    ("川", "noun", "カワ", 2, "C3", "*", "*", "和"),
    ("雨", "noun", "アメ", 1, "C3", "*", "*", "和"),
    ("公園", "noun", "コーエン", 0, "C3", "*", "*", "漢"),
    ("先生", "noun", "センセー", 3, "C3", "*", "*", "漢"),
    ("学生", "noun", "ガクセー", 0, "C3", "*", "*", "漢"),
    ("過去", "noun", "カコ", 1, "C3", "*", "*", "漢"),
    ("話", "noun", "ハナシ", 3, "C3", "*", "*", "和"),
    ("今", "noun", "イマ", 1, "C3", "*", "*", "和"),
    ("カレー", "noun", "カレー", 0, "C3", "*", "*", "外"),
    ("もの", "noun", "モノ", 2, "C3", "*", "*", "和"),
    ("友達", "noun", "トモダチ", 0, "C3", "*", "*", "和"),
    ("天気", "noun", "テンキ", 1, "C3", "*", "*", "漢"),
    ("電車", "noun", "デンシャ", 0, "C3", "*", "*", "漢"),
    ("新聞", "noun", "シンブン", 0, "C3", "*", "*", "漢"),
    ("図書館", "noun", "トショカン", 2, "C3", "*", "*", "漢"),
    ("本", "noun", "ホン", 1, "C3", "*", "*", "漢"),
    ("水", "noun", "ミズ", 0, "C3", "*", "*", "和"),
    ("茶", "noun", "チャ", 0, "C3", "*", "*", "漢"),
    ("空", "noun", "ソラ", 1, "C3", "*", "*", "和"),
    ("ある", "verb", "アル", 1, "V", "終止形", "五段", "和"),
    ("行く", "verb", "イク", 0, "V", "終止形", "五段", "和"),
    ("行き", "verb", "イキ", 0, "V", "連用形", "五段", "和"),
    ("降る", "verb", "フル", 1, "V", "終止形", "五段", "和"),
    ("降り", "verb", "フリ", 0, "V", "連用形", "五段", "和"),
    ("忘れる", "verb", "ワスレル", 0, "V", "終止形", "一段", "和"),
    ("食べる", "verb", "タベル", 2, "V", "終止形", "一段", "和"),
    ("食べ", "verb", "タベ", 2, "V", "連用形", "一段", "和"),
    ("聞く", "verb", "キク", 0, "V", "終止形", "五段", "和"),
    ("作る", "verb", "ツクル", 2, "V", "終止形", "五段", "和"),
    ("来る", "verb", "クル", 1, "V", "終止形", "カ変", "和"),
    ("来", "verb", "キ", 0, "V", "連用形", "カ変", "和"),
    ("いる", "verb", "イル", 0, "V", "終止形", "一段", "和"),
    ("話す", "verb", "ハナス", 2, "V", "終止形", "五段", "和"),
    ("見る", "verb", "ミル", 1, "V", "終止形", "一段", "和"),
    ("見え", "verb", "ミエ", 1, "V", "連用形", "一段", "和"),
    ("飲む", "verb", "ノム", 1, "V", "終止形", "五段", "和"),
    ("読む", "verb", "ヨム", 1, "V", "終止形", "五段", "和"),
    ("読み", "verb", "ヨミ", 1, "V", "連用形", "五段", "和"),
    ("辛い", "adjective", "ツライ", 0, "A", "終止形", "形容詞", "和"),
    ("辛い", "adjective", "カライ", 2, "A", "終止形", "形容詞", "和"),
    ("高い", "adjective", "タカイ", 2, "A", "終止形", "形容詞", "和"),
    ("大きい", "adjective", "オーキー", 3, "A", "終止形", "形容詞", "和"),
    ("よい", "adjective", "ヨイ", 1, "A", "終止形", "形容詞", "和"),
    ("とても", "adverb", "トテモ", 0, "C3", "*", "*", "和"),
    ("あの", "adnominal", "アノ", 0, "C3", "*", "*", "和"),
    ("この", "adnominal", "コノ", 0, "C3", "*", "*", "和"),
    ("お", "prefix", "オ", 0, "C3", "*", "*", "和"),
    ("は", "particle", "ワ", 0, "P", "*", "*", "和"),
    ("が", "particle", "ガ", 0, "P", "*", "*", "和"),
    ("の", "particle", "ノ", 0, "P", "*", "*", "和"),
    ("に", "particle", "ニ", 0, "P", "*", "*", "和"),
    ("を", "particle", "オ", 0, "P", "*", "*", "和"),
    ("も", "particle", "モ", 0, "P", "*", "*", "和"),
    ("へ", "particle", "エ", 0, "P", "*", "*", "和"),
    ("で", "particle", "デ", 0, "P", "*", "*", "和"),
    ("と", "particle", "ト", 0, "P", "*", "*", "和"),
    ("から", "particle", "カラ", 0, "P", "*", "*", "和"),
    ("ます", "auxiliary", "マス", 1, "C4", "終止形", "特殊", "和"),
    ("です", "auxiliary", "デス", 1, "C5", "終止形", "特殊", "和"),
]

POLYPHONES = {"方", "辛い"}

# combination type, pos pair, mora bucket, outcome
SANDHI = [
    ("C1", "noun+noun", "*", "NUC1"),
    ("C2", "noun+noun", "*", "FLAT"),
    ("*", "prefix+noun", "*", "FLAT"),
    ("C4", "verb+auxiliary", "*", "NUC1"),
]

EXCEPTIONS = [("noun-proper", "noun")]

# Phrases separated by "|", words by spaces; "surface:PRON" picks a reading.
SENTENCES = [
    "京都 タワー | 上空 の | 方:ホー に | 雲 が | ある",
    "辛い:ツライ | 過去 も | 忘れる",
    "辛い:カライ | カレー を | 食べる",
    "駅 の | 方:ホー へ | 行く",
    "山 の | 方:ホー に | 雨 が | 降る",
    "あの | 方:カタ は | 先生 です",
    "この | 方:カタ は | 学生 です",
    "辛い:カライ | もの を | 食べる",
    "辛い:ツライ | 話 を | 聞く",
    "今 は | 辛い:ツライ",
    "辛い:カライ | 料理 を | 作る",
    "川 の | 方:ホー へ | 行く",
    "あの | 方:カタ が | 来る",
    "公園 の | 方:ホー に | 友達 が | いる",
    "この | カレー は | 辛い:カライ",
    "あの | 方:カタ と | 話す",
    "東京 大学 の | 学生 です",
    "日本 料理 を | 作る",
    "京都 タワー を | 見る",
    "お 茶 を | 飲む",
    "お 水 を | 飲む",
    "天気 が | とても | よい",
    "電車 で | 会社 へ | 行く",
    "図書館 で | 本 を | 読む",
    "新聞 を | 読み ます",
    "カレー を | 食べ ます",
    "大阪 の | 空 は | 高い",
    "友達 と | 公園 へ | 行き ます",
    "雨 が | 降り ます",
    "東京 タワー が | 見え ます",
    "大きい | 山 が | ある",
    "京都 の | 公園 は | 大きい",
    "先生 の | 話 を | 聞く",
    "学生 が | 図書館 へ | 行く",
    "日本 の | 天気 は | よい",
    "大阪 タワー に | 行く",
    "今 は | 雨 が | 降る",
    "この | 本 は | とても | 高い",
    "お 茶 と | カレー を | 作る",
    "京都 大学 の | 先生 です",
    "川 で | 水 を | 見る",
    "友達 が | 来 ます",
    "東京 の | 空 を | 見る",
    "山 の | 上空 に | 雲 が | ある",
    "辛い:ツライ | 今 を | 忘れる",
    "辛い:カライ | 料理 は | とても | 高い",
    "あの | 方:カタ の | 本 を | 読む",
    "駅 の | 方:ホー から | 電車 が | 来る",
    "学生 は | 日本 料理 を | 食べ ます",
    "先生 が | 京都 タワー の | 方:ホー を | 見る",
]

GLIDES = set("ャュョァィゥェォヮ")


def morae(pron):
    out = []
    for ch in pron:
        if ch in GLIDES:
            out[-1] += ch
        else:
            out.append(ch)
    return out


def bucket(n):
    return "6+" if n >= 6 else str(n)


def pos_matches(pos, tag):
    return tag == "*" or pos == tag or pos.startswith(tag + "-")


def sandhi_labels(words):
    labels = ["KEEP"] * len(words)
    absorbed = [False] * len(words)
    for i in range(len(words) - 1, 0, -1):
        left, right = words[i - 1], words[i]
        outcome = "KEEP"
        for ctype, pair, mb, out in SANDHI:
            lp, rp = pair.split("+")
            if ctype not in ("*", right[4]):
                continue
            if mb not in ("*", bucket(len(morae(right[2])))):
                continue
            if pos_matches(left[1], lp) and pos_matches(right[1], rp):
                outcome = out
                break
        if outcome == "KEEP":
            continue
        if not absorbed[i]:
            labels[i] = outcome
        labels[i - 1] = "FLAT"
        absorbed[i - 1] = True
    return labels


def lookup(token):
    surface, _, pron = token.partition(":")
    hits = [w for w in WORDS if w[0] == surface and (not pron or w[2] == pron)]
    if len(hits) != 1:
        raise SystemExit("ambiguous or unknown word: " + token)
    return hits[0]


def write_lexicon():
    with open(os.path.join(HERE, "toy_lexicon.tsv"), "w", encoding="utf-8") as f:
        f.write("# surface\tleft\tright\tcost\tpos\tpron\taccent\tctype\tcform\tctype\twtype\n")
        for w in WORDS:
            cid = POS_ID[w[1]]
            cost = 100 + 10 * (w[0] in POLYPHONES and w[2] in ("カタ", "カライ"))
            f.write("\t".join([w[0], str(cid), str(cid), str(cost), w[1], w[2],
                               str(w[3]), w[4], w[5], w[6], w[7]]) + "\n")


def write_connection():
    n = 9
    cost = [[0] * n for _ in range(n)]
    for a in (PART, AUX):
        cost[BOS][a] = 200
    cost[PART][PART] = 50
    cost[PREFIX][PART] = 300
    with open(os.path.join(HERE, "toy_connection.txt"), "w", encoding="utf-8") as f:
        f.write("%d %d\n" % (n, n))
        for row in cost:
            f.write(" ".join(map(str, row)) + "\n")


def write_tables():
    with open(os.path.join(HERE, "toy_sandhi.tsv"), "w", encoding="utf-8") as f:
        f.write("# combination_type\tpos_pair\tmora_bucket\toutcome\n")
        for row in SANDHI:
            f.write("\t".join(row) + "\n")
    with open(os.path.join(HERE, "toy_boundary_exceptions.tsv"), "w", encoding="utf-8") as f:
        f.write("# left_pos\tright_pos\n")
        for row in EXCEPTIONS:
            f.write("\t".join(row) + "\n")


def write_corpus():
    blocks = []
    raw_lines = []
    for n, spec in enumerate(SENTENCES, 1):
        lines = []
        raw = ""
        for phrase in spec.split("|"):
            words = [lookup(t) for t in phrase.split()]
            labels = sandhi_labels(words)
            for j, (w, label) in enumerate(zip(words, labels)):
                raw += w[0]
                lemma = w[0] if w[0] in POLYPHONES else "-"
                lines.append("\t".join([w[0], w[1], w[2], str(w[3]), w[4], w[5],
                                        w[6], w[7], "1" if j == 0 else "0",
                                        label, lemma]))
        raw_lines.append(raw)
        blocks.append("#id toy%02d\n%s\n%s\n" % (n, raw, "\n".join(lines)))
    with open(os.path.join(HERE, "toy_corpus.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(blocks))
    with open(os.path.join(HERE, "toy_text.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(raw_lines) + "\n")


if __name__ == "__main__":
    write_lexicon()
    write_connection()
    write_tables()
    write_corpus()
