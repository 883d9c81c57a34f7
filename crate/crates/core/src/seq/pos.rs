//! POS super-characters appended to sentence words. Tags come from an
//! external tagger's output file.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosError {
    #[error("sentence has {tokens} tokens but {tags} tags were given")]
    TokenMismatch { tokens: usize, tags: usize },
    #[error("token {index} is `{sentence}` in the sentence but `{tagged}` in the tags")]
    TokenDiffers {
        index: usize,
        sentence: String,
        tagged: String,
    },
    #[error("line {line}: expected `token<TAB>TAG`")]
    Malformed { line: usize },
}

/// The super-character for a tag, e.g. `⟨NNP⟩`.
pub fn pos_token(tag: &str) -> String {
    format!("⟨{tag}⟩")
}

/// `Crk binds` + tags → `Crk ⟨NNP⟩ binds ⟨VBZ⟩`.
pub fn pos_annotate(sentence: &str, tags: &[(String, String)]) -> Result<String, PosError> {
    let words: Vec<&str> = sentence.split_whitespace().collect();
    if words.len() != tags.len() {
        return Err(PosError::TokenMismatch {
            tokens: words.len(),
            tags: tags.len(),
        });
    }
    let mut parts = Vec::with_capacity(words.len() * 2);
    for (index, (word, (token, tag))) in words.iter().zip(tags).enumerate() {
        if word != token {
            return Err(PosError::TokenDiffers {
                index,
                sentence: word.to_string(),
                tagged: token.clone(),
            });
        }
        parts.push(word.to_string());
        parts.push(pos_token(tag));
    }
    Ok(parts.join(" "))
}

/// Reads `token<TAB>TAG` lines, one sentence per blank-line separated block.
pub fn read_pos_file(text: &str) -> Result<Vec<Vec<(String, String)>>, PosError> {
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            if !current.is_empty() {
                sentences.push(std::mem::take(&mut current));
            }
            continue;
        }
        let (token, tag) = line
            .split_once('\t')
            .filter(|(tok, tag)| !tok.is_empty() && !tag.trim().is_empty())
            .ok_or(PosError::Malformed { line: i + 1 })?;
        current.push((token.to_string(), tag.trim().to_string()));
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    Ok(sentences)
}
